// Command-line front end: generate traces, detect events, evaluate against
// ground truth, optimize detector parameters, summarize durations.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "socev/atomic.hpp"
#include "socev/complex.hpp"
#include "socev/dsl.hpp"
#include "socev/eval.hpp"
#include "socev/io.hpp"
#include "socev/optimizer.hpp"
#include "socev/scenario.hpp"

namespace fs = std::filesystem;
using namespace socev;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitRules = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << text;
}

CompiledRuleSet load_rules(const std::string& path) {
    if (path.empty()) return dsl::compile_builtin();
    return dsl::check_and_compile(dsl::parse(read_file(path)));
}

int cmd_generate(const std::string& script_path, const std::string& out_dir) {
    MatchScript script = load_script(script_path);
    if (script.slots.empty()) throw DataError("script lists no scenarios");
    GeneratedScenario gen = generate_match(script.slots);
    Trace trace = script.noise ? add_noise(gen.trace, *script.noise, script.noise_seed)
                               : std::move(gen.trace);
    fs::create_directories(out_dir);
    save_trace(trace, (fs::path(out_dir) / "trace.csv").string());
    save_events(gen.truth, (fs::path(out_dir) / "truth.jsonl").string());
    std::cout << "wrote " << trace.size() << " frames, " << gen.truth.atomic.size()
              << " atomic and " << gen.truth.complex.size() << " complex truth events to "
              << out_dir << "\n";
    return 0;
}

int cmd_detect(const std::string& trace_path, const std::string& params_path,
               const std::string& rules_path, const std::string& out_path, int smoothing) {
    RuleParameterSet params =
        params_path.empty() ? reference_parameters() : RuleParameterSet::load(params_path);
    auto rules = load_rules(rules_path);
    Trace trace = load_trace(trace_path);
    DetectOptions opts;
    opts.smoothing_width = smoothing;
    EventLog log;
    log.atomic = detect_atomic(trace, params, opts);
    log.complex = detect_complex(log.atomic, trace, rules);
    log.sort_and_renumber();
    save_events(log, out_path);
    std::cout << "detected " << log.atomic.size() << " atomic and " << log.complex.size()
              << " complex events\n";
    return 0;
}

int cmd_evaluate(const std::string& detected_path, const std::string& truth_path,
                 const std::string& out_path, int tolerance, double iou) {
    EventLog detected = load_events(detected_path);
    EventLog truth = load_events(truth_path);
    EvalConfig config;
    config.atomic_tolerance = tolerance;
    config.iou_threshold = iou;
    MetricsReport report = evaluate(detected, truth, config);
    if (!out_path.empty()) write_file(out_path, report.to_json());
    std::cout << report.to_text();
    return 0;
}

int cmd_optimize(const std::string& config_path, const std::string& train_dir,
                 const std::string& out_path, const std::string& telemetry_path) {
    OptimizeConfig config = OptimizeConfig::load(config_path);
    auto data = std::make_shared<TrainingSet>();
    std::vector<fs::path> csvs;
    if (!fs::is_directory(train_dir)) throw DataError(train_dir + " is not a directory");
    for (const auto& e : fs::directory_iterator(train_dir))
        if (e.path().extension() == ".csv") csvs.push_back(e.path());
    std::sort(csvs.begin(), csvs.end());
    for (const auto& csv : csvs) {
        fs::path truth = csv;
        truth.replace_extension(".jsonl");
        if (!fs::exists(truth)) throw DataError("no truth file for " + csv.string());
        data->traces.push_back(load_trace(csv.string()));
        data->truths.push_back(load_events(truth.string()));
    }
    if (data->traces.empty()) throw DataError("no .csv traces in " + train_dir);

    DetectOptions opts;
    opts.smoothing_width = config.smoothing_width;
    auto objective = detection_objective(data, config.weights, opts, config.tolerance,
                                         config.extended_genome);
    auto space = detection_genome_space(config.extended_genome);
    OptimizationResult result = run_spea2(space, objective, config.spea2);
    write_file(out_path, archive_to_json(result.archive, config.extended_genome));
    if (!telemetry_path.empty()) write_file(telemetry_path, result.telemetry.to_csv());
    std::cout << "archive of " << result.archive.size() << " genomes from "
              << data->traces.size() << " training traces\n";
    return 0;
}

int cmd_stats(const std::string& events_path) {
    EventLog log = load_events(events_path);
    std::cout << duration_stats_csv(duration_stats(log.complex, 30.0));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soccer event detection from positional data"};
    app.set_version_flag("--version", std::string(SOCEV_VERSION));
    app.require_subcommand(1);

    std::string script_path, out_dir;
    auto* gen = app.add_subcommand("generate", "Synthesize a trace + ground truth from a script");
    gen->add_option("script", script_path, "Scenario script (JSON)")->required();
    gen->add_option("-o,--output", out_dir, "Output directory")->required();

    std::string trace_path, params_path, rules_path, events_out;
    int smoothing = 0;
    auto* det = app.add_subcommand("detect", "Detect atomic and complex events in a trace");
    det->add_option("trace", trace_path, "Positional CSV")->required();
    det->add_option("--params", params_path, "Rule parameter set (JSON)");
    det->add_option("--rules", rules_path, "Complex rule file (.cer), default built-ins");
    det->add_option("--smoothing", smoothing, "Moving-average width for positions");
    det->add_option("-o,--output", events_out, "Output events (JSONL)")->required();

    std::string detected_path, truth_path, report_path;
    int tolerance = 3;
    double iou = 0.2;
    auto* ev = app.add_subcommand("evaluate", "Score detected events against ground truth");
    ev->add_option("detected", detected_path, "Detected events (JSONL)")->required();
    ev->add_option("truth", truth_path, "Ground-truth events (JSONL)")->required();
    ev->add_option("-o,--output", report_path, "Report output (JSON)");
    ev->add_option("--tolerance", tolerance, "Atomic matching tolerance, frames");
    ev->add_option("--iou", iou, "Interval matching IoU threshold");

    std::string opt_config, train_dir, archive_path, telemetry_path;
    auto* opt = app.add_subcommand("optimize", "Tune detector parameters with SPEA2");
    opt->add_option("config", opt_config, "Optimizer configuration (JSON)")->required();
    opt->add_option("train", train_dir, "Directory of <name>.csv / <name>.jsonl pairs")
        ->required();
    opt->add_option("-o,--output", archive_path, "Archive output (JSON)")->required();
    opt->add_option("--telemetry", telemetry_path, "Per-generation telemetry (CSV)");

    std::string stats_path;
    auto* st = app.add_subcommand("stats", "Duration summaries of complex events");
    st->add_option("events", stats_path, "Events (JSONL)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(script_path, out_dir);
        if (det->parsed()) return cmd_detect(trace_path, params_path, rules_path, events_out,
                                             smoothing);
        if (ev->parsed()) return cmd_evaluate(detected_path, truth_path, report_path,
                                              tolerance, iou);
        if (opt->parsed()) return cmd_optimize(opt_config, train_dir, archive_path,
                                               telemetry_path);
        if (st->parsed()) return cmd_stats(stats_path);
    } catch (const dsl::SyntaxError& e) {
        std::cerr << "rule error: " << e.what() << "\n";
        return kExitRules;
    } catch (const dsl::CompileError& e) {
        std::cerr << "rule error: " << e.what() << "\n";
        return kExitRules;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
