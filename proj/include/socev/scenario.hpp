#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "socev/events.hpp"
#include "socev/trace.hpp"

namespace socev {

enum class ScenarioKind {
    Pass,
    Cross,
    FilteringPass,
    PassThenGoal,
    CrossThenGoal,
    FilteringPassThenGoal,
    TackleWon,
    TackleLost,
    ShotGoal,
    ShotOut,
    ShotSaved,
    Dribble,
    Clearance,  // plain kick over a sideline: KickingTheBall + BallOut
};

std::string scenario_kind_name(ScenarioKind k);
std::optional<ScenarioKind> scenario_kind_from_name(const std::string& s);
const std::vector<ScenarioKind>& all_scenario_kinds();

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::Pass;
    double v0 = 12.0;   // kick speed, m/s
    double mu = 3.0;    // linear deceleration, m/s^2
    std::uint64_t seed = 0;

    void check() const;  // v0 in [6,30], mu in [1,6]
};

struct NoiseSpec {
    double sigma = 0.0;    // i.i.d. Gaussian positional jitter, meters
    double dropout = 0.0;  // per-row drop probability, <= 0.05

    void check() const;
};

struct InfeasibleScript : std::runtime_error {
    explicit InfeasibleScript(const std::string& why)
        : std::runtime_error("infeasible script: " + why) {}
};

struct OverlappingScenarios : std::runtime_error {
    OverlappingScenarios() : std::runtime_error("scenario offsets overlap") {}
};

struct GeneratedScenario {
    Trace trace;
    EventLog truth;
};

/// Deterministic synthesis of one scenario with exact ground truth. The
/// trace is unambiguous under reference_parameters(): every event the
/// detectors should find is in the truth log, at the exact frame.
GeneratedScenario generate_scenario(const ScenarioSpec& spec);

struct ScenarioSlot {
    ScenarioSpec spec;
    int offset_frames = 0;  // start frame within the match
};

/// Concatenated scenarios over one shared roster; ground truth re-indexed.
GeneratedScenario generate_match(const std::vector<ScenarioSlot>& script);

/// Gaussian jitter plus row dropout with linear interpolation. Ground truth
/// is unaffected. Deterministic for a fixed seed.
Trace add_noise(const Trace& trace, const NoiseSpec& noise, std::uint64_t seed);

// Script files: {"scenarios":[{"kind":..,"v0":..,"mu":..,"seed":..,"offset":..},..],
//                "noise":{"sigma":..,"dropout":..,"seed":..}}
struct MatchScript {
    std::vector<ScenarioSlot> slots;
    std::optional<NoiseSpec> noise;
    std::uint64_t noise_seed = 0;
};

MatchScript load_script(const std::string& path);
MatchScript script_from_json(const std::string& text);
std::string script_to_json(const MatchScript& script);

/// A varied scenario suite cycling through every kind, offsets spaced so no
/// cross-scenario pattern can chain. Used by tests and the demo pipeline.
std::vector<ScenarioSpec> standard_suite(int count, std::uint64_t seed);

}  // namespace socev
