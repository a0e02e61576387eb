#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <random>

#include "signet/runner.hpp"

namespace py = pybind11;
using namespace signet;

namespace {

std::unique_ptr<AgentBackend> backend_by_name(const std::string& name) {
    if (name == "rule") return std::make_unique<RuleAgent>();
    if (name == "echo") return std::make_unique<EchoAgent>();
    if (name == "constant-positive") return std::make_unique<ConstantAgent>(Sign::Positive);
    if (name == "constant-negative") return std::make_unique<ConstantAgent>(Sign::Negative);
    throw std::invalid_argument(
        "unknown back-end: " + name +
        " (in-process simulations support rule, echo, constant-positive, constant-negative)");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "simulate and analyze signed interactions among language-model agents";
    mod.attr("PARSER_VERSION") = kParserVersion;

    py::class_<InteractionMatrix>(mod, "InteractionMatrix")
        .def_static("parse", &InteractionMatrix::parse, py::arg("m"), py::arg("text"),
                    "decode a row-major string of +/-/0 off-diagonal entries")
        .def("to_string", &InteractionMatrix::to_string)
        .def_property_readonly("m", &InteractionMatrix::m)
        .def("sign", [](const InteractionMatrix& mat, int i, int j) { return to_int(mat.at(i, j)); },
             py::arg("i"), py::arg("j"), "entry as -1, 0 or +1")
        .def("contains_neutral", &InteractionMatrix::contains_neutral)
        .def("__eq__",
             [](const InteractionMatrix& a, const InteractionMatrix& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const InteractionMatrix& mat) {
            return "InteractionMatrix(" + std::to_string(mat.m()) + ", \"" + mat.to_string() +
                   "\")";
        });

    py::class_<ExperimentConfig>(mod, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("m", &ExperimentConfig::m)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("t_max", &ExperimentConfig::t_max)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("backend", &ExperimentConfig::backend)
        .def_readwrite("model_label", &ExperimentConfig::model_label)
        .def_property(
            "kind", [](const ExperimentConfig& c) { return std::string(kind_word(c.kind)); },
            [](ExperimentConfig& c, const std::string& w) { c.kind = kind_from_word(w); })
        .def_property(
            "mechanism",
            [](const ExperimentConfig& c) { return std::string(mechanism_word(c.mechanism)); },
            [](ExperimentConfig& c, const std::string& w) { c.mechanism = mechanism_from_word(w); })
        .def_property(
            "init_mode",
            [](const ExperimentConfig& c) { return std::string(init_mode_word(c.init_mode)); },
            [](ExperimentConfig& c, const std::string& w) { c.init_mode = init_mode_from_word(w); })
        .def_property(
            "dialect", [](const ExperimentConfig& c) { return std::string(dialect_word(c.dialect)); },
            [](ExperimentConfig& c, const std::string& w) { c.dialect = dialect_from_word(w); })
        .def("simulation_count", &ExperimentConfig::simulation_count)
        .def("validate", &ExperimentConfig::validate)
        .def("__repr__", [](const ExperimentConfig& c) {
            return "<ExperimentConfig " + canonical_config(c) + ">";
        });

    py::class_<Trajectory>(mod, "Trajectory")
        .def_property_readonly(
            "kind", [](const Trajectory& t) { return std::string(kind_word(t.kind)); })
        .def_property_readonly(
            "mechanism",
            [](const Trajectory& t) { return std::string(mechanism_word(t.mechanism)); })
        .def_readonly("matrices", &Trajectory::matrices)
        .def_property_readonly("decisions",
                               [](const Trajectory& t) {
                                   py::list out;
                                   for (const StepDecision& d : t.decisions)
                                       out.append(py::make_tuple(
                                           d.t, d.focal, d.target,
                                           std::string(1, sign_char(d.applied)), d.refused));
                                   return out;
                               },
                               "list of (t, focal, target, applied_sign, refused) tuples")
        .def_readonly("valid", &Trajectory::valid)
        .def_readonly("aborted", &Trajectory::aborted)
        .def_readonly("refusal_count", &Trajectory::refusal_count)
        .def("final_state", &Trajectory::final_state);

    py::class_<EndpointConfig>(mod, "EndpointConfig")
        .def(py::init<>())
        .def_readwrite("base_url", &EndpointConfig::base_url)
        .def_readwrite("model", &EndpointConfig::model)
        .def_readwrite("temperature", &EndpointConfig::temperature)
        .def_readwrite("max_tokens", &EndpointConfig::max_tokens)
        .def_readwrite("timeout_ms", &EndpointConfig::timeout_ms)
        .def_readwrite("max_retries", &EndpointConfig::max_retries)
        .def_readwrite("backoff_base_ms", &EndpointConfig::backoff_base_ms)
        .def_readwrite("auth_env", &EndpointConfig::auth_env)
        .def_readwrite("max_in_flight", &EndpointConfig::max_in_flight);

    py::class_<RunManifest>(mod, "RunManifest")
        .def(py::init<>())
        .def_readwrite("sweep", &RunManifest::sweep)
        .def_readwrite("out_dir", &RunManifest::out_dir)
        .def_readwrite("workers", &RunManifest::workers)
        .def_readwrite("refusal_threshold", &RunManifest::refusal_threshold)
        .def_readwrite("endpoint", &RunManifest::endpoint);

    py::class_<RunOutcome>(mod, "RunOutcome")
        .def_readonly("experiment", &RunOutcome::experiment)
        .def_readonly("log_file", &RunOutcome::log_file)
        .def_readonly("executed", &RunOutcome::executed)
        .def_readonly("skipped", &RunOutcome::skipped)
        .def_readonly("aborted", &RunOutcome::aborted)
        .def_readonly("refusal_simulations", &RunOutcome::refusal_simulations)
        .def("__repr__", [](const RunOutcome& o) {
            return "<RunOutcome " + o.experiment + " executed=" + std::to_string(o.executed) +
                   " skipped=" + std::to_string(o.skipped) + ">";
        });

    py::class_<ReportBundle>(mod, "ReportBundle")
        .def_readonly("balance", &ReportBundle::balance)
        .def_readonly("histogram", &ReportBundle::histogram)
        .def_readonly("stability", &ReportBundle::stability)
        .def_readonly("keywords", &ReportBundle::keywords)
        .def_readonly("timeseries", &ReportBundle::timeseries)
        .def_readonly("counts", &ReportBundle::counts)
        .def_readonly("charts", &ReportBundle::charts)
        .def_readonly("corrupt_lines", &ReportBundle::corrupt_lines)
        .def_readonly("dropped_simulations", &ReportBundle::dropped_simulations)
        .def_readonly("simulations", &ReportBundle::simulations)
        .def_readonly("parse_disagreements", &ReportBundle::parse_disagreements)
        .def_readonly("parser_version_mismatches", &ReportBundle::parser_version_mismatches);

    mod.def("enumerate_triad_initializations", &enumerate_triad_initializations,
            "all 64 sign assignments of a three-agent matrix");
    mod.def(
        "random_initialization",
        [](int m, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_initialization(m, rng);
        },
        py::arg("m"), py::arg("seed"), "independent fair +/- draws per entry");
    mod.def("is_structurally_balanced", &is_structurally_balanced);
    mod.def("is_clustering_balanced", &is_clustering_balanced);
    mod.def(
        "edge_and_cycle_counts",
        [](const InteractionMatrix& mat) {
            EdgeCycleCounts c = edge_and_cycle_counts(mat);
            return py::make_tuple(c.positive_edges, c.negative_edges, c.positive_cycles);
        },
        py::arg("matrix"), "(positive_edges, negative_edges, positive_triad_cycles)");

    mod.def(
        "render_prompt",
        [](const InteractionMatrix& mat, int focal, int target, const std::string& kind,
           const std::string& mechanism, const std::string& dialect) {
            return render_prompt(build_context(mat, focal, target, kind_from_word(kind),
                                               mechanism_from_word(mechanism)),
                                 dialect_from_word(dialect));
        },
        py::arg("matrix"), py::arg("focal"), py::arg("target"), py::arg("kind"),
        py::arg("mechanism"), py::arg("dialect") = "llama");
    mod.def(
        "extract_sign",
        [](const std::string& raw, const std::string& kind, const std::string& dialect) {
            return std::string(
                parsed_answer_word(extract_sign(raw, kind_from_word(kind), dialect_from_word(dialect))));
        },
        py::arg("raw"), py::arg("kind"), py::arg("dialect") = "llama",
        "parse a raw model response into a declared answer word");
    mod.def(
        "scan_keywords",
        [](const std::string& text) {
            const KeywordSpec spec = KeywordSpec::standard();
            const KeywordHits hits = scan_keywords(text, spec);
            py::dict out;
            for (std::size_t i = 0; i < spec.terms.size(); ++i)
                out[py::str(spec.terms[i])] = hits.counts[i];
            return out;
        },
        py::arg("text"), "occurrence counts of the tracked justification vocabulary");

    mod.def(
        "run_simulation",
        [](const ExperimentConfig& cfg, const InteractionMatrix& init) {
            std::unique_ptr<AgentBackend> agent = backend_by_name(cfg.backend);
            return run_simulation(cfg, init, *agent);
        },
        py::arg("config"), py::arg("init"),
        py::call_guard<py::gil_scoped_release>());

    mod.def("canonical_config", &canonical_config, py::arg("config"));
    mod.def("experiment_id", &experiment_id, py::arg("config"));
    mod.def("simulation_seed", &simulation_seed, py::arg("config"), py::arg("ordinal"));
    mod.def("planned_initialization", &planned_initialization, py::arg("config"),
            py::arg("init_index"), py::arg("sim_index"));
    mod.def("log_path", &log_path, py::arg("out_dir"), py::arg("config"));
    mod.def("run_experiment", &run_experiment, py::arg("config"), py::arg("manifest"),
            py::call_guard<py::gil_scoped_release>());
    mod.def("run_sweep", &run_sweep, py::arg("manifest"),
            py::call_guard<py::gil_scoped_release>());
    mod.def("report_from_logs", &report_from_logs, py::arg("log_dir"),
            py::arg("refusal_threshold") = 0.02, py::call_guard<py::gil_scoped_release>());
    mod.def("replay_from_logs", &replay_from_logs, py::arg("log_dir"),
            py::arg("refusal_threshold") = 0.02, py::call_guard<py::gil_scoped_release>());
    mod.def("write_reports", &write_reports, py::arg("out_dir"), py::arg("bundle"));
    mod.def("validate_prompts", &validate_prompts, py::arg("fixtures_dir"));
}
