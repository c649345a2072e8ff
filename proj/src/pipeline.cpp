#include "siglogic/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "siglogic/errors.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/sif.hpp"
#include "siglogic/simulate.hpp"

namespace siglogic {

namespace detail {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

namespace {

using detail::format_double;
using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << content;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

long parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        long n = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double n = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

}  // namespace

void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "pkn") config.pkn_path = value;
    else if (key == "midas") config.midas_path = value;
    else if (key == "out") config.output_dir = value;
    else if (key == "alpha") config.alpha = parse_real(value, key);
    else if (key == "na_fac") config.na_fac = parse_real(value, key);
    else if (key == "seed") config.ga.seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "preprocess.nonc") config.preprocessing.do_nonc = parse_bool(value, key);
    else if (key == "preprocess.compress")
        config.preprocessing.do_compress = parse_bool(value, key);
    else if (key == "preprocess.expand") config.preprocessing.do_expand = parse_bool(value, key);
    else if (key == "preprocess.max_inputs")
        config.preprocessing.max_inputs = static_cast<int>(parse_int(value, key));
    else if (key == "ga.population_size")
        config.ga.population_size = static_cast<int>(parse_int(value, key));
    else if (key == "ga.max_generations")
        config.ga.max_generations = static_cast<int>(parse_int(value, key));
    else if (key == "ga.stall_generations")
        config.ga.stall_generations = static_cast<int>(parse_int(value, key));
    else if (key == "ga.bit_mutation_prob") config.ga.bit_mutation_prob = parse_real(value, key);
    else if (key == "ga.elitism_count")
        config.ga.elitism_count = static_cast<int>(parse_int(value, key));
    else if (key == "ga.selection_pressure")
        config.ga.selection_pressure = parse_real(value, key);
    else if (key == "ga.relative_tolerance")
        config.ga.relative_tolerance = parse_real(value, key);
    else if (key == "ga.seed") config.ga.seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "ga.threads") config.ga.threads = static_cast<int>(parse_int(value, key));
    else throw UsageError("unknown config key '" + key + "'");
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    PipelineConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_config_entry(config, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return config;
}

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& e : errors) out += "error: " + e + "\n";
    for (const auto& w : warnings) out += "warning: " + w + "\n";
    out += ok() ? "OK" : "FAILED";
    out += ": network has " + std::to_string(pkn_nodes) + " nodes / " +
           std::to_string(pkn_reactions) + " reactions, dataset has " +
           std::to_string(midas_experiments) + " experiments / " +
           std::to_string(midas_signals) + " signals\n";
    return out;
}

std::string ValidationReport::to_json() const {
    json j;
    j["ok"] = ok();
    j["errors"] = errors;
    j["warnings"] = warnings;
    j["pkn"] = {{"nodes", pkn_nodes}, {"reactions", pkn_reactions}};
    j["midas"] = {{"experiments", midas_experiments}, {"signals", midas_signals}};
    return j.dump(2) + "\n";
}

ValidationReport run_validate(const std::string& pkn_path, const std::string& midas_path) {
    ValidationReport report;

    PknModel model;
    bool have_model = false;
    try {
        model = PknModel::from_sif(read_sif_file(pkn_path));
        have_model = true;
        report.pkn_nodes = model.nodes().size();
        report.pkn_reactions = model.reactions().size();
        if (model.reactions().empty())
            report.errors.push_back("network '" + pkn_path + "' contains no reactions");
    } catch (const std::exception& e) {
        report.errors.push_back("network: " + std::string(e.what()));
    }

    XMidas data;
    bool have_data = false;
    try {
        data = read_midas_file(midas_path);
        have_data = true;
        report.midas_experiments = data.n_experiments();
        report.midas_signals = data.signal_names.size();
        for (const auto& w : data.warnings) report.warnings.push_back(w);
    } catch (const std::exception& e) {
        report.errors.push_back("dataset: " + std::string(e.what()));
    }

    if (have_model && have_data) {
        auto check = [&](const std::vector<std::string>& names, const char* what) {
            for (const auto& n : names)
                if (!model.nodes().count(n))
                    report.errors.push_back(std::string("dataset ") + what + " '" + n +
                                            "' is not a node of the network");
        };
        check(data.stimuli_names, "stimulus");
        check(data.inhibitor_names, "inhibitor");
        check(data.signal_names, "signal");
        if (!data.first_nonzero_time())
            report.warnings.push_back("dataset has no non-zero time point; training would fail");
    }
    return report;
}

namespace {

StageCount count_stage(const std::string& name, bool applied, const PknModel& m) {
    return {name, applied, m.nodes().size(), m.reactions().size()};
}

std::string stages_json(const std::vector<StageCount>& stages) {
    json j;
    j["stages"] = json::array();
    for (const auto& s : stages)
        j["stages"].push_back({{"stage", s.stage},
                               {"applied", s.applied},
                               {"nodes", s.nodes},
                               {"reactions", s.reactions}});
    return j.dump(2) + "\n";
}

}  // namespace

PreprocessResult run_preprocess(const PipelineConfig& config) {
    if (config.pkn_path.empty()) throw UsageError("no network file given");
    if (config.midas_path.empty()) throw UsageError("no dataset file given");

    const XMidas data = read_midas_file(config.midas_path);
    PknModel model = PknModel::from_sif(read_sif_file(config.pkn_path));
    model = annotate_from(model, data);

    PreprocessResult result;
    result.raw = model;
    result.stages.push_back(count_stage("raw", true, model));

    if (config.preprocessing.do_nonc) model = cut_nonc(model);
    result.stages.push_back(count_stage("nonc", config.preprocessing.do_nonc, model));

    if (config.preprocessing.do_compress) model = compress(model);
    result.stages.push_back(count_stage("compressed", config.preprocessing.do_compress, model));

    if (config.preprocessing.do_expand)
        model = expand_and_gates(model, config.preprocessing.max_inputs);
    result.stages.push_back(count_stage("expanded", config.preprocessing.do_expand, model));

    result.model = model;

    if (!config.output_dir.empty()) {
        const std::filesystem::path dir(config.output_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "preprocessed.sif", write_sif(result.model.to_sif()));
        write_file(dir / "model_raw.dot", to_dot(result.raw));
        write_file(dir / "model_preprocessed.dot", to_dot(result.model));
        write_file(dir / "preprocess_summary.json", stages_json(result.stages));
    }
    return result;
}

namespace {

std::string fit_trace_csv(const TrainResult& result) {
    std::string out = "generation,best,mean\n";
    for (const auto& g : result.generations)
        out += std::to_string(g.generation) + ',' + format_double(g.best) + ',' +
               format_double(g.mean) + '\n';
    return out;
}

std::string bitstring_report(const PknModel& model, const BitString& bits) {
    std::string out = bits.to_string() + '\n';
    for (std::size_t i = 0; i < model.reactions().size(); ++i)
        out += std::string(bits.test(i) ? "1" : "0") + '\t' +
               format_reaction(model.reactions()[i]) + '\n';
    return out;
}

std::string residuals_csv(const ScoreBreakdown& breakdown) {
    std::string out = "experiment,signal,time,data,simulated,residual\n";
    for (const auto& r : breakdown.residuals) {
        out += r.experiment + ',' + r.signal + ',' + format_double(r.time) + ',';
        out += r.data ? format_double(*r.data) : "NA";
        out += ',';
        out += r.simulated < 0 ? "NA" : std::to_string(static_cast<int>(r.simulated));
        out += ',';
        out += r.residual ? format_double(*r.residual) : "NA";
        out += '\n';
    }
    return out;
}

std::string score_json(const TrainResult& result) {
    json j;
    j["theta_f"] = result.best_score.theta_f;
    j["theta_s"] = result.best_score.theta_s;
    j["alpha"] = result.best_score.alpha;
    j["total"] = result.best_score.total;
    j["n_points"] = result.best_score.n_points;
    j["n_na"] = result.best_score.n_na;
    j["evaluations"] = result.evaluations;
    switch (result.stopped_by) {
        case StopReason::max_generations: j["stopped_by"] = "max_generations"; break;
        case StopReason::stall: j["stopped_by"] = "stall"; break;
        case StopReason::tolerance: j["stopped_by"] = "tolerance"; break;
    }
    j["best_bitstring"] = result.best.to_string();
    return j.dump(2) + "\n";
}

}  // namespace

namespace detail {

// Rows are experiments, columns signals; each cell shows the measured value
// on the left and the simulated steady state on the right. Grey marks
// missing or unstabilized entries.
std::string heatmap_svg(const XMidas& data, const ScoreBreakdown& breakdown) {
    const std::size_t rows = data.n_experiments();
    const std::size_t cols = data.signal_names.size();
    const int cell_w = 64, cell_h = 28, left = 110, top = 40;
    const int width = left + static_cast<int>(cols) * cell_w + 10;
    const int height = top + static_cast<int>(rows) * cell_h + 10;

    // (experiment, signal) -> entry, first listed time wins.
    std::map<std::pair<std::string, std::string>, const ResidualEntry*> cell;
    for (const auto& r : breakdown.residuals)
        cell.try_emplace({r.experiment, r.signal}, &r);

    auto shade = [](double v) {
        v = std::clamp(v, 0.0, 1.0);
        const int level = static_cast<int>(255.0 - v * 200.0);
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02xff", level, level);
        return std::string(buf);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<style>text{font-family:Helvetica,sans-serif;font-size:11px}</style>\n";
    for (std::size_t c = 0; c < cols; ++c)
        svg += "<text x=\"" + std::to_string(left + static_cast<int>(c) * cell_w + 4) +
               "\" y=\"" + std::to_string(top - 8) + "\">" + data.signal_names[c] +
               "</text>\n";
    for (std::size_t r = 0; r < rows; ++r) {
        const int y = top + static_cast<int>(r) * cell_h;
        svg += "<text x=\"4\" y=\"" + std::to_string(y + 18) + "\">" +
               data.experiment_names[r] + "</text>\n";
        for (std::size_t c = 0; c < cols; ++c) {
            const int x = left + static_cast<int>(c) * cell_w;
            auto it = cell.find({data.experiment_names[r], data.signal_names[c]});
            std::string data_fill = "#cccccc", sim_fill = "#cccccc";
            if (it != cell.end()) {
                if (it->second->data) data_fill = shade(*it->second->data);
                if (it->second->simulated >= 0)
                    sim_fill = shade(static_cast<double>(it->second->simulated));
            }
            const int half = cell_w / 2 - 2;
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(half) + "\" height=\"" +
                   std::to_string(cell_h - 4) + "\" fill=\"" + data_fill +
                   "\" stroke=\"#666666\"/>\n";
            svg += "<rect x=\"" + std::to_string(x + half) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(half) + "\" height=\"" +
                   std::to_string(cell_h - 4) + "\" fill=\"" + sim_fill +
                   "\" stroke=\"#666666\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace detail

TrainArtifacts run_train(const PipelineConfig& config) {
    return run_train(config, run_preprocess(config));
}

TrainArtifacts run_train(const PipelineConfig& config, PreprocessResult preprocessed) {
    TrainArtifacts artifacts;
    artifacts.preprocess = std::move(preprocessed);

    const XMidas data = read_midas_file(config.midas_path);
    artifacts.result = ga_train(artifacts.preprocess.model, data, config.alpha, config.ga,
                                config.na_fac);

    if (!config.output_dir.empty()) {
        const std::filesystem::path dir(config.output_dir);
        std::filesystem::create_directories(dir);
        const PknModel best_model = cut(artifacts.preprocess.model, artifacts.result.best);
        write_file(dir / "fit_trace.csv", fit_trace_csv(artifacts.result));
        write_file(dir / "best_bitstring.txt",
                   bitstring_report(artifacts.preprocess.model, artifacts.result.best));
        write_file(dir / "residuals.csv", residuals_csv(artifacts.result.best_score));
        write_file(dir / "score.json", score_json(artifacts.result));
        write_file(dir / "best_model.dot", to_dot(best_model));
        write_file(dir / "fit_heatmap.svg",
                   detail::heatmap_svg(data, artifacts.result.best_score));
    }
    return artifacts;
}

std::string run_simulate(const std::string& pkn_path, const std::vector<std::string>& on,
                         const std::vector<std::string>& inhibit) {
    PknModel model = PknModel::from_sif(read_sif_file(pkn_path));
    std::set<std::string> stimuli(on.begin(), on.end());
    std::set<std::string> inhibitors(inhibit.begin(), inhibit.end());
    for (const auto& name : stimuli)
        if (!model.nodes().count(name)) throw LookupError("unknown node '" + name + "'");
    for (const auto& name : inhibitors)
        if (!model.nodes().count(name)) throw LookupError("unknown node '" + name + "'");
    model = annotate(model, stimuli, inhibitors, {});

    ExperimentCondition condition;
    for (const auto& name : stimuli) condition.stimuli[name] = 1;
    condition.inhibited = inhibitors;

    const SimState state = simulate_steady(model, condition);
    std::string out = "node\tvalue\n";
    for (std::size_t i = 0; i < state.node_names.size(); ++i) {
        out += state.node_names[i];
        out += '\t';
        out += state.values[i] < 0 ? "NA" : std::to_string(static_cast<int>(state.values[i]));
        out += '\n';
    }
    return out;
}

std::string run_export(const std::string& pkn_path, const std::string& format) {
    const PknModel model = PknModel::from_sif(read_sif_file(pkn_path));
    if (format == "sif") return write_sif(model.to_sif());
    if (format == "dot") return to_dot(model);
    if (format == "sbmlqual") return to_sbmlqual(model);
    throw UsageError("unknown export format '" + format + "' (expected sif, dot or sbmlqual)");
}

}  // namespace siglogic
