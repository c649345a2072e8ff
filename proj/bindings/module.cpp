#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siglogic/errors.hpp"
#include "siglogic/ga.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/model.hpp"
#include "siglogic/pipeline.hpp"
#include "siglogic/reaction.hpp"
#include "siglogic/score.hpp"
#include "siglogic/sif.hpp"
#include "siglogic/simulate.hpp"

namespace py = pybind11;
using namespace siglogic;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Boolean logic models of signalling networks: build, simulate, train";

    py::register_exception<ParseError>(m, "ReactionParseError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FileFormatError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<LookupError>(m, "NameLookupError", PyExc_KeyError);
    py::register_exception<ScoringError>(m, "ScoringError", PyExc_RuntimeError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_RuntimeError);

    py::enum_<Sign>(m, "Sign")
        .value("activate", Sign::activate)
        .value("inhibit", Sign::inhibit);

    py::class_<ReactionInput>(m, "ReactionInput")
        .def(py::init<std::string, Sign>(), py::arg("node"), py::arg("sign") = Sign::activate)
        .def_readonly("node", &ReactionInput::node)
        .def_readonly("sign", &ReactionInput::sign)
        .def("__repr__", [](const ReactionInput& in) {
            return std::string(in.sign == Sign::inhibit ? "!" : "") + in.node;
        });

    py::class_<Reaction>(m, "Reaction")
        .def_static("make", &Reaction::make, py::arg("inputs"), py::arg("output"))
        .def_property_readonly("inputs", &Reaction::inputs)
        .def_property_readonly("output", &Reaction::output)
        .def_property_readonly("is_and_gate",
                               [](const Reaction& r) { return r.kind() == Reaction::Kind::and_gate; })
        .def("__str__", &format_reaction)
        .def("__repr__", [](const Reaction& r) { return "Reaction('" + format_reaction(r) + "')"; })
        .def("__eq__", [](const Reaction& a, const Reaction& b) { return a == b; })
        .def("__lt__", [](const Reaction& a, const Reaction& b) { return a < b; })
        .def("__hash__",
             [](const Reaction& r) { return py::hash(py::str(format_reaction(r))); });

    m.def("parse_reaction", &parse_reaction, py::arg("text"));
    m.def("format_reaction", &format_reaction, py::arg("reaction"));

    py::class_<SifDocument>(m, "SifDocument")
        .def(py::init<>())
        .def_readwrite("reactions", &SifDocument::reactions)
        .def_readwrite("source_name", &SifDocument::source_name);
    m.def("read_sif", &read_sif_string, py::arg("content"), py::arg("source_name") = "");
    m.def("read_sif_file", &read_sif_file, py::arg("path"));
    m.def("write_sif", &write_sif, py::arg("document"));

    py::class_<Measurement>(m, "Measurement")
        .def(py::init<std::string, double, std::map<std::string, int>,
                      std::map<std::string, int>, double>(),
             py::arg("protein"), py::arg("time"), py::arg("stimuli"), py::arg("inhibitors"),
             py::arg("value"))
        .def_readwrite("protein", &Measurement::protein)
        .def_readwrite("time", &Measurement::time)
        .def_readwrite("stimuli", &Measurement::stimuli)
        .def_readwrite("inhibitors", &Measurement::inhibitors)
        .def_readwrite("value", &Measurement::value);

    py::class_<ExperimentCondition>(m, "ExperimentCondition")
        .def(py::init<>())
        .def(py::init<std::map<std::string, int>, std::set<std::string>>(),
             py::arg("stimuli"), py::arg("inhibited") = std::set<std::string>{})
        .def_readwrite("stimuli", &ExperimentCondition::stimuli)
        .def_readwrite("inhibited", &ExperimentCondition::inhibited);

    py::class_<XMidas::Row>(m, "MidasRow")
        .def_readonly("experiment", &XMidas::Row::experiment)
        .def_readonly("time", &XMidas::Row::time)
        .def_readonly("values", &XMidas::Row::values);

    py::class_<XMidas>(m, "XMidas")
        .def(py::init<>())
        .def_readonly("cell_line", &XMidas::cell_line)
        .def_readonly("stimuli_names", &XMidas::stimuli_names)
        .def_readonly("inhibitor_names", &XMidas::inhibitor_names)
        .def_readonly("signal_names", &XMidas::signal_names)
        .def_readonly("experiment_names", &XMidas::experiment_names)
        .def_readonly("experiments", &XMidas::experiments)
        .def_readonly("measurements", &XMidas::measurements)
        .def_readonly("warnings", &XMidas::warnings)
        .def_property_readonly("n_experiments", &XMidas::n_experiments)
        .def("times", &XMidas::times)
        .def("first_nonzero_time", &XMidas::first_nonzero_time);

    m.def("read_midas", &read_midas_string, py::arg("content"));
    m.def("read_midas_file", &read_midas_file, py::arg("path"));
    m.def("write_midas", &write_midas, py::arg("data"));
    m.def("condition_of", &condition_of, py::arg("data"), py::arg("experiment"));
    m.def("timecourse", &timecourse, py::arg("data"), py::arg("experiment"),
          py::arg("protein"));

    py::class_<MidasBuilder>(m, "MidasBuilder")
        .def(py::init<>())
        .def("add_measurement", &MidasBuilder::add_measurement, py::arg("measurement"))
        .def("build", &MidasBuilder::build)
        .def("__len__", &MidasBuilder::size);

    py::class_<BitString>(m, "BitString")
        .def(py::init<>())
        .def(py::init<std::vector<std::uint8_t>>(), py::arg("bits"))
        .def_static("zeros", &BitString::zeros, py::arg("n"))
        .def_static("ones", &BitString::ones, py::arg("n"))
        .def_static("from_string", &BitString::from_string, py::arg("text"))
        .def("__len__", &BitString::size)
        .def("__getitem__",
             [](const BitString& b, std::size_t i) {
                 if (i >= b.size()) throw py::index_error();
                 return b.test(i);
             })
        .def("count", &BitString::count)
        .def("__str__", &BitString::to_string)
        .def("__repr__",
             [](const BitString& b) { return "BitString('" + b.to_string() + "')"; })
        .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
        .def("__hash__", [](const BitString& b) { return py::hash(py::str(b.to_string())); });

    py::class_<PknModel>(m, "PknModel")
        .def(py::init<>())
        .def_static("from_sif", &PknModel::from_sif, py::arg("document"))
        .def_static("from_reactions", &PknModel::from_reactions, py::arg("reactions"))
        .def_property_readonly("nodes", &PknModel::nodes)
        .def_property_readonly("reactions", &PknModel::reactions)
        .def_property_readonly("stimuli", &PknModel::stimuli)
        .def_property_readonly("inhibitors", &PknModel::inhibitors)
        .def_property_readonly("signals", &PknModel::signals)
        .def_property_readonly("expanded", &PknModel::expanded)
        .def_property_readonly("compressed", &PknModel::compressed)
        .def("to_sif", &PknModel::to_sif, py::arg("source_name") = "")
        .def("__eq__", [](const PknModel& a, const PknModel& b) { return a == b; });

    m.def("add_reaction", &add_reaction, py::arg("model"), py::arg("text"));
    m.def("annotate", &annotate, py::arg("model"), py::arg("stimuli"), py::arg("inhibitors"),
          py::arg("signals"));
    m.def("annotate_from", &annotate_from, py::arg("model"), py::arg("data"));
    m.def("expand_and_gates", &expand_and_gates, py::arg("model"), py::arg("max_inputs") = 2);
    m.def("compress", &compress, py::arg("model"));
    m.def("cut_nonc", &cut_nonc, py::arg("model"));
    m.def("cut", &cut, py::arg("model"), py::arg("bits"));
    m.def("split_node", &split_node, py::arg("model"), py::arg("node"), py::arg("variants"));
    m.def("merge_nodes", &merge_nodes, py::arg("model"), py::arg("nodes"), py::arg("into"));
    m.def("to_dot", &to_dot, py::arg("model"));
    m.def("to_sbmlqual", &to_sbmlqual, py::arg("model"));

    py::class_<SimState>(m, "SimState")
        .def_readonly("node_names", &SimState::node_names)
        .def_readonly("values", &SimState::values)
        .def("value_of", &SimState::value_of, py::arg("node"))
        .def("as_dict", [](const SimState& s) {
            py::dict d;
            for (std::size_t i = 0; i < s.node_names.size(); ++i) {
                if (s.values[i] < 0)
                    d[py::str(s.node_names[i])] = py::none();
                else
                    d[py::str(s.node_names[i])] = static_cast<int>(s.values[i]);
            }
            return d;
        });

    py::class_<TruthTable>(m, "TruthTable")
        .def_readonly("input_names", &TruthTable::input_names)
        .def_readonly("n_stimuli", &TruthTable::n_stimuli)
        .def_readonly("signal_names", &TruthTable::signal_names)
        .def_readonly("rows", &TruthTable::rows)
        .def("__eq__", [](const TruthTable& a, const TruthTable& b) { return a == b; });

    m.def("simulate_steady", &simulate_steady, py::arg("model"), py::arg("condition"),
          py::arg("max_iter") = 0);
    m.def("truth_table", &truth_table, py::arg("model"), py::arg("max_iter") = 0);

    py::class_<ResidualEntry>(m, "ResidualEntry")
        .def_readonly("experiment", &ResidualEntry::experiment)
        .def_readonly("signal", &ResidualEntry::signal)
        .def_readonly("time", &ResidualEntry::time)
        .def_readonly("data", &ResidualEntry::data)
        .def_readonly("simulated", &ResidualEntry::simulated)
        .def_readonly("residual", &ResidualEntry::residual);

    py::class_<ScoreBreakdown>(m, "ScoreBreakdown")
        .def_readonly("theta_f", &ScoreBreakdown::theta_f)
        .def_readonly("theta_s", &ScoreBreakdown::theta_s)
        .def_readonly("alpha", &ScoreBreakdown::alpha)
        .def_readonly("total", &ScoreBreakdown::total)
        .def_readonly("n_points", &ScoreBreakdown::n_points)
        .def_readonly("n_na", &ScoreBreakdown::n_na)
        .def_readonly("residuals", &ScoreBreakdown::residuals);

    py::class_<ScoreOptions>(m, "ScoreOptions")
        .def(py::init<>())
        .def_readwrite("alpha", &ScoreOptions::alpha)
        .def_readwrite("na_fac", &ScoreOptions::na_fac)
        .def_readwrite("times", &ScoreOptions::times);

    m.def("score", &score, py::arg("model"), py::arg("bits"), py::arg("data"),
          py::arg("options") = ScoreOptions{});
    m.def("theta_f", &theta_f, py::arg("model"), py::arg("bits"), py::arg("data"),
          py::arg("times") = std::vector<double>{});
    m.def("theta_s", &theta_s, py::arg("model"), py::arg("bits"));

    py::enum_<StopReason>(m, "StopReason")
        .value("max_generations", StopReason::max_generations)
        .value("stall", StopReason::stall)
        .value("tolerance", StopReason::tolerance);

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GaConfig::population_size)
        .def_readwrite("max_generations", &GaConfig::max_generations)
        .def_readwrite("stall_generations", &GaConfig::stall_generations)
        .def_readwrite("bit_mutation_prob", &GaConfig::bit_mutation_prob)
        .def_readwrite("elitism_count", &GaConfig::elitism_count)
        .def_readwrite("selection_pressure", &GaConfig::selection_pressure)
        .def_readwrite("relative_tolerance", &GaConfig::relative_tolerance)
        .def_readwrite("seed", &GaConfig::seed)
        .def_readwrite("threads", &GaConfig::threads);

    py::class_<GenerationStat>(m, "GenerationStat")
        .def_readonly("generation", &GenerationStat::generation)
        .def_readonly("best", &GenerationStat::best)
        .def_readonly("mean", &GenerationStat::mean);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("best", &TrainResult::best)
        .def_readonly("best_score", &TrainResult::best_score)
        .def_readonly("generations", &TrainResult::generations)
        .def_readonly("evaluations", &TrainResult::evaluations)
        .def_readonly("stopped_by", &TrainResult::stopped_by);

    m.def("ga_train", &ga_train, py::arg("model"), py::arg("data"), py::arg("alpha"),
          py::arg("config") = GaConfig{}, py::arg("na_fac") = 1.0,
          py::arg("times") = std::vector<double>{},
          py::call_guard<py::gil_scoped_release>());
    m.def("exhaustive_search", &exhaustive_search, py::arg("model"), py::arg("data"),
          py::arg("alpha"), py::arg("na_fac") = 1.0,
          py::arg("times") = std::vector<double>{},
          py::call_guard<py::gil_scoped_release>());
    m.def("evaluate", &evaluate, py::arg("model"), py::arg("bits"), py::arg("data"),
          py::arg("alpha"), py::arg("na_fac") = 1.0,
          py::arg("times") = std::vector<double>{});

    py::class_<PreprocessOptions>(m, "PreprocessOptions")
        .def(py::init<>())
        .def_readwrite("do_nonc", &PreprocessOptions::do_nonc)
        .def_readwrite("do_compress", &PreprocessOptions::do_compress)
        .def_readwrite("do_expand", &PreprocessOptions::do_expand)
        .def_readwrite("max_inputs", &PreprocessOptions::max_inputs);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("pkn_path", &PipelineConfig::pkn_path)
        .def_readwrite("midas_path", &PipelineConfig::midas_path)
        .def_readwrite("output_dir", &PipelineConfig::output_dir)
        .def_readwrite("alpha", &PipelineConfig::alpha)
        .def_readwrite("na_fac", &PipelineConfig::na_fac)
        .def_readwrite("preprocessing", &PipelineConfig::preprocessing)
        .def_readwrite("ga", &PipelineConfig::ga);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("errors", &ValidationReport::errors)
        .def_readonly("warnings", &ValidationReport::warnings)
        .def_property_readonly("ok", &ValidationReport::ok)
        .def("to_text", &ValidationReport::to_text)
        .def("to_json", &ValidationReport::to_json);

    py::class_<StageCount>(m, "StageCount")
        .def_readonly("stage", &StageCount::stage)
        .def_readonly("applied", &StageCount::applied)
        .def_readonly("nodes", &StageCount::nodes)
        .def_readonly("reactions", &StageCount::reactions);

    py::class_<PreprocessResult>(m, "PreprocessResult")
        .def_readonly("raw", &PreprocessResult::raw)
        .def_readonly("model", &PreprocessResult::model)
        .def_readonly("stages", &PreprocessResult::stages);

    py::class_<TrainArtifacts>(m, "TrainArtifacts")
        .def_readonly("preprocess", &TrainArtifacts::preprocess)
        .def_readonly("result", &TrainArtifacts::result);

    m.def("run_validate", &run_validate, py::arg("pkn_path"), py::arg("midas_path"));
    m.def("run_preprocess", &run_preprocess, py::arg("config"));
    m.def("run_train", py::overload_cast<const PipelineConfig&>(&run_train),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_simulate", &run_simulate, py::arg("pkn_path"), py::arg("on"),
          py::arg("inhibit"));
    m.def("run_export", &run_export, py::arg("pkn_path"), py::arg("format"));
    m.def("load_config_file", &load_config_file, py::arg("path"));

#ifdef VERSION_INFO
#define SIGLOGIC_STR2(x) #x
#define SIGLOGIC_STR(x) SIGLOGIC_STR2(x)
    m.attr("__version__") = SIGLOGIC_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
