#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace siglogic {

/// One observed value: which protein, when, and under which combination of
/// stimuli (0/1) and inhibitor treatments (0/1, 1 = drug applied).
struct Measurement {
    std::string protein;
    double time = 0.0;
    std::map<std::string, int> stimuli;
    std::map<std::string, int> inhibitors;
    double value = 0.0;
};

/// The treatment half of one experiment row: every stimulus with its 0/1
/// value, plus the set of inhibitors that are switched on.
struct ExperimentCondition {
    std::map<std::string, int> stimuli;
    std::set<std::string> inhibited;
};

/// Perturbation dataset as two tables. `experiments` holds one row per
/// distinct treatment combination (columns: stimuli then inhibitors, in the
/// order of the name lists). `measurements` holds one row per (experiment,
/// time) with an optional value per signal. Every experiment has a row at
/// time 0, possibly all-missing.
struct XMidas {
    struct Row {
        std::size_t experiment = 0;
        double time = 0.0;
        std::vector<std::optional<double>> values;  // aligned with signal_names
    };

    std::string cell_line = "Cell";
    std::vector<std::string> stimuli_names;
    std::vector<std::string> inhibitor_names;
    std::vector<std::string> signal_names;
    std::vector<std::string> experiment_names;   // experiment_0, experiment_1, ...
    std::vector<std::vector<int>> experiments;   // [experiment][stimuli..inhibitors]
    std::vector<Row> measurements;               // sorted by (experiment, time)
    std::vector<std::string> warnings;

    std::size_t n_experiments() const { return experiment_names.size(); }

    std::size_t experiment_index(const std::string& name) const;
    std::size_t signal_index(const std::string& protein) const;

    /// Sorted distinct acquisition times across the dataset.
    std::vector<double> times() const;

    /// Smallest strictly positive time, if any.
    std::optional<double> first_nonzero_time() const;
};

/// Treatment settings of one experiment; throws LookupError on unknown name.
ExperimentCondition condition_of(const XMidas& data, const std::string& experiment);

/// Time course of one signal in one experiment, times ascending, missing
/// entries preserved. Throws LookupError on unknown names.
std::vector<std::pair<double, std::optional<double>>> timecourse(
    const XMidas& data, const std::string& experiment, const std::string& protein);

/// Accumulates measurements and assembles them into an XMidas. Measurements
/// sharing the same (stimuli, inhibitors) combination map to the same
/// experiment; a repeated (condition, protein, time) overwrites the earlier
/// value and records a warning.
class MidasBuilder {
public:
    void add_measurement(const Measurement& m);
    XMidas build() const;
    std::size_t size() const { return measurements_.size(); }

private:
    std::vector<Measurement> measurements_;
};

/// Parses MIDAS CSV. Column prefixes: TR: treatments (a name ending in
/// `:CellLine`/`CellLine` names the cell line, a trailing `i` or `:i` marks
/// an inhibitor, anything else is a stimulus), DA: acquisition times
/// (`DA:ALL` shared), DV: measured values. Rows with identical treatment
/// vectors collapse into one experiment. `NA` or empty cells are missing.
XMidas read_midas(std::istream& stream);
XMidas read_midas_string(const std::string& content);
XMidas read_midas_file(const std::string& path);

/// Deterministic MIDAS CSV: cell line column, stimuli sorted, inhibitors
/// sorted (with `i` suffix), DA:ALL, DV columns sorted; one row per
/// (experiment, time).
std::string write_midas(const XMidas& data);

}  // namespace siglogic
