// Command line front end: validate | preprocess | simulate | train | export.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siglogic/errors.hpp"
#include "siglogic/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFormat = 2;
constexpr int kExitRuntime = 3;

struct CommonOpts {
    std::string pkn, midas, out, config;
    double alpha = -1.0;          // negative: not set on the command line
    long long seed = -1;
    bool no_compress = false, no_expand = false, no_nonc = false;
    int max_inputs = -1;
    int threads = -1;
};

siglogic::PipelineConfig build_config(const CommonOpts& opts) {
    siglogic::PipelineConfig config;
    if (!opts.config.empty()) config = siglogic::load_config_file(opts.config);
    if (!opts.pkn.empty()) config.pkn_path = opts.pkn;
    if (!opts.midas.empty()) config.midas_path = opts.midas;
    if (!opts.out.empty()) config.output_dir = opts.out;
    if (opts.alpha >= 0.0) config.alpha = opts.alpha;
    if (opts.seed >= 0) config.ga.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.no_nonc) config.preprocessing.do_nonc = false;
    if (opts.no_compress) config.preprocessing.do_compress = false;
    if (opts.no_expand) config.preprocessing.do_expand = false;
    if (opts.max_inputs > 0) config.preprocessing.max_inputs = opts.max_inputs;
    if (opts.threads > 0) config.ga.threads = opts.threads;
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_ga) {
    cmd->add_option("--pkn", opts.pkn, "network file (SIF)");
    cmd->add_option("--midas", opts.midas, "dataset file (MIDAS CSV)");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--config", opts.config, "key=value config file");
    cmd->add_flag("--no-compress", opts.no_compress, "skip the compression stage");
    cmd->add_flag("--no-expand", opts.no_expand, "skip AND gate expansion");
    cmd->add_flag("--no-nonc", opts.no_nonc, "skip pruning of unreachable nodes");
    cmd->add_option("--max-inputs", opts.max_inputs, "largest AND gate to generate");
    if (with_ga) {
        cmd->add_option("--alpha", opts.alpha, "size penalty weight");
        cmd->add_option("--seed", opts.seed, "random seed");
        cmd->add_option("--threads", opts.threads, "fitness evaluation threads");
    }
}

int classify(const std::exception& e) {
    if (dynamic_cast<const siglogic::ParseError*>(&e)) return kExitFormat;
    if (dynamic_cast<const siglogic::FormatError*>(&e)) return kExitFormat;
    if (dynamic_cast<const siglogic::UsageError*>(&e)) return kExitUsage;
    if (dynamic_cast<const siglogic::LookupError*>(&e)) return kExitUsage;
    return kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logic model training for signalling networks"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool as_json = false;
    std::vector<std::string> on_names, inhibit_names;
    std::string export_format = "sif";
    std::string export_out;

    auto* validate = app.add_subcommand("validate", "check a network / dataset pair");
    add_common(validate, opts, false);
    validate->add_flag("--json", as_json, "machine readable diagnostics");

    auto* preprocess = app.add_subcommand("preprocess", "prune, compress and expand the network");
    add_common(preprocess, opts, false);

    auto* simulate = app.add_subcommand("simulate", "steady state for one condition");
    simulate->add_option("--pkn", opts.pkn, "network file (SIF)")->required();
    simulate->add_option("--on", on_names, "stimulus clamped to 1 (repeatable)");
    simulate->add_option("--inhibit", inhibit_names, "node clamped to 0 (repeatable)");

    auto* train = app.add_subcommand("train", "fit the network to the dataset");
    add_common(train, opts, true);

    auto* exp = app.add_subcommand("export", "convert a network file");
    exp->add_option("--pkn", opts.pkn, "network file (SIF)")->required();
    exp->add_option("--format", export_format, "sif | dot | sbmlqual");
    exp->add_option("--out", export_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    std::string stage = app.get_subcommands().front()->get_name();
    try {
        if (validate->parsed()) {
            auto config = build_config(opts);
            if (config.pkn_path.empty() || config.midas_path.empty())
                throw siglogic::UsageError("validate needs --pkn and --midas");
            auto report = siglogic::run_validate(config.pkn_path, config.midas_path);
            std::cout << (as_json ? report.to_json() : report.to_text());
            return report.ok() ? kExitOk : kExitFormat;
        }
        if (preprocess->parsed()) {
            stage = "preprocess";
            auto config = build_config(opts);
            if (config.output_dir.empty())
                throw siglogic::UsageError("preprocess needs --out");
            auto result = siglogic::run_preprocess(config);
            for (const auto& s : result.stages)
                std::cout << s.stage << (s.applied ? "" : " (skipped)") << ": " << s.nodes
                          << " nodes, " << s.reactions << " reactions\n";
            return kExitOk;
        }
        if (simulate->parsed()) {
            std::cout << siglogic::run_simulate(opts.pkn, on_names, inhibit_names);
            return kExitOk;
        }
        if (train->parsed()) {
            auto config = build_config(opts);
            if (config.output_dir.empty()) throw siglogic::UsageError("train needs --out");
            stage = "preprocess";
            auto pre = siglogic::run_preprocess(config);
            stage = "train";
            auto artifacts = siglogic::run_train(config, std::move(pre));
            const auto& score = artifacts.result.best_score;
            std::cout << "best total " << siglogic::detail::format_double(score.total)
                      << " (fit " << siglogic::detail::format_double(score.theta_f)
                      << ", size " << siglogic::detail::format_double(score.theta_s)
                      << ") after " << artifacts.result.evaluations << " evaluations\n";
            return kExitOk;
        }
        if (exp->parsed()) {
            const std::string content = siglogic::run_export(opts.pkn, export_format);
            if (export_out.empty()) {
                std::cout << content;
            } else {
                std::FILE* f = std::fopen(export_out.c_str(), "wb");
                if (!f) throw siglogic::UsageError("cannot write '" + export_out + "'");
                std::fwrite(content.data(), 1, content.size(), f);
                std::fclose(f);
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error in stage '" << stage << "': " << e.what() << "\n";
        return classify(e);
    }
    return kExitUsage;
}
