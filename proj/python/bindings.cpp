// Python bindings over the main pipeline operations. All payloads use the
// same textual formats as the CLI (positional CSV, event JSONL, JSON), so
// Python callers interoperate with files produced by either side.
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socev/atomic.hpp"
#include "socev/complex.hpp"
#include "socev/dsl.hpp"
#include "socev/eval.hpp"
#include "socev/io.hpp"
#include "socev/scenario.hpp"

namespace py = pybind11;
using namespace socev;

namespace {

std::string trace_to_csv(const Trace& trace) {
    std::ostringstream out;
    save_trace(trace, out);
    return out.str();
}

std::string events_to_jsonl(const EventLog& log) {
    std::ostringstream out;
    save_events(log, out);
    return out.str();
}

EventLog events_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    return load_events(in);
}

py::tuple py_generate(const std::string& script_json) {
    MatchScript script = script_from_json(script_json);
    GeneratedScenario gen = generate_match(script.slots);
    Trace trace = script.noise ? add_noise(gen.trace, *script.noise, script.noise_seed)
                               : std::move(gen.trace);
    return py::make_tuple(trace_to_csv(trace), events_to_jsonl(gen.truth));
}

std::string py_detect(const std::string& trace_csv, const std::string& params_json,
                      const std::string& rules_text, int smoothing_width) {
    RuleParameterSet params = params_json.empty() ? reference_parameters()
                                                  : RuleParameterSet::from_json(params_json);
    auto rules = rules_text.empty() ? dsl::compile_builtin()
                                    : dsl::check_and_compile(dsl::parse(rules_text));
    std::istringstream in(trace_csv);
    Trace trace = load_trace(in);
    DetectOptions opts;
    opts.smoothing_width = smoothing_width;
    EventLog log;
    log.atomic = detect_atomic(trace, params, opts);
    log.complex = detect_complex(log.atomic, trace, rules);
    log.sort_and_renumber();
    return events_to_jsonl(log);
}

std::string py_evaluate(const std::string& detected_jsonl, const std::string& truth_jsonl,
                        int tolerance, double iou) {
    EvalConfig config;
    config.atomic_tolerance = tolerance;
    config.iou_threshold = iou;
    return evaluate(events_from_jsonl(detected_jsonl), events_from_jsonl(truth_jsonl), config)
        .to_json();
}

std::string py_stats(const std::string& events_jsonl) {
    return duration_stats_csv(duration_stats(events_from_jsonl(events_jsonl).complex, 30.0));
}

}  // namespace

PYBIND11_MODULE(socev_py, m) {
    m.doc() = "Soccer event detection: generation, detection, evaluation";
    m.attr("__version__") = SOCEV_VERSION;
    m.def("generate", &py_generate, py::arg("script_json"),
          "Synthesize a match from a scenario script; returns (trace_csv, truth_jsonl)");
    m.def("detect", &py_detect, py::arg("trace_csv"), py::arg("params_json") = "",
          py::arg("rules") = "", py::arg("smoothing_width") = 0,
          "Detect atomic and complex events; returns events as JSONL");
    m.def("evaluate", &py_evaluate, py::arg("detected_jsonl"), py::arg("truth_jsonl"),
          py::arg("tolerance") = 3, py::arg("iou") = 0.2,
          "Score detections against ground truth; returns a JSON report");
    m.def("stats", &py_stats, py::arg("events_jsonl"),
          "Per-type duration summaries of complex events as CSV");
    m.def("builtin_rules", &dsl::builtin_source, "Source text of the built-in rule set");
    m.def("reference_params", [] { return reference_parameters().to_json(); },
          "The reference detector parameter set as JSON");
}
