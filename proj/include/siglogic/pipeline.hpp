#pragma once

#include <string>
#include <vector>

#include "siglogic/ga.hpp"
#include "siglogic/model.hpp"

namespace siglogic {

struct PreprocessOptions {
    bool do_nonc = true;
    bool do_compress = true;
    bool do_expand = true;
    int max_inputs = 2;
};

struct PipelineConfig {
    std::string pkn_path;
    std::string midas_path;
    std::string output_dir;
    double alpha = 1e-4;
    double na_fac = 1.0;
    PreprocessOptions preprocessing;
    GaConfig ga;
};

/// Flat key=value file with dotted sections, e.g. `ga.population_size=50`.
/// Unknown keys raise UsageError; `#` starts a comment.
PipelineConfig load_config_file(const std::string& path);
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::size_t pkn_nodes = 0;
    std::size_t pkn_reactions = 0;
    std::size_t midas_experiments = 0;
    std::size_t midas_signals = 0;

    bool ok() const { return errors.empty(); }
    std::string to_text() const;
    std::string to_json() const;
};

/// Parses both files and cross-checks that every dataset name exists in the
/// network. Parse failures become error entries instead of exceptions.
ValidationReport run_validate(const std::string& pkn_path, const std::string& midas_path);

struct StageCount {
    std::string stage;
    bool applied = false;
    std::size_t nodes = 0;
    std::size_t reactions = 0;
};

struct PreprocessResult {
    PknModel raw;    // annotated input model
    PknModel model;  // after the enabled stages
    std::vector<StageCount> stages;
};

/// nonc pruning, compression and AND expansion in that order, honoring the
/// flags. Writes preprocessed.sif, model_raw.dot, model_preprocessed.dot
/// and preprocess_summary.json into the output directory (kept in memory
/// only when output_dir is empty).
PreprocessResult run_preprocess(const PipelineConfig& config);

struct TrainArtifacts {
    PreprocessResult preprocess;
    TrainResult result;
};

/// Full pipeline: preprocess, train, then write fit_trace.csv,
/// best_bitstring.txt, residuals.csv, score.json, best_model.dot and
/// fit_heatmap.svg next to the preprocessing artifacts. Deterministic for a
/// fixed config and seed, whatever the thread count.
TrainArtifacts run_train(const PipelineConfig& config);

/// Training phase alone, reusing an existing preprocessing result.
TrainArtifacts run_train(const PipelineConfig& config, PreprocessResult preprocessed);

/// Steady state of every node under one ad-hoc condition: `on` names are
/// clamped to 1, `inhibit` names to 0. Returns a two-column text table.
std::string run_simulate(const std::string& pkn_path, const std::vector<std::string>& on,
                         const std::vector<std::string>& inhibit);

/// Re-exports a network file as sif, dot or sbmlqual.
std::string run_export(const std::string& pkn_path, const std::string& format);

namespace detail {
/// Shortest round-trip decimal text for a double; used by every artifact
/// writer so that identical runs produce identical bytes.
std::string format_double(double v);
std::string heatmap_svg(const XMidas& data, const ScoreBreakdown& breakdown);
}  // namespace detail

}  // namespace siglogic
