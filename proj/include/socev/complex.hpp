#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "socev/events.hpp"
#include "socev/trace.hpp"

namespace socev {

enum class PatternOp { Leaf, Seq, And };

enum class ZoneKind { SidelineBand, GoalArea, AttackingThird, BehindGoalLine };

std::string zone_name(ZoneKind z);
std::optional<ZoneKind> zone_from_name(const std::string& s);

/// A reference to an event type in a pattern operand. Complex names shadow
/// atomic ones; the `atomic` keyword forces the atomic namespace.
struct EventTypeRef {
    bool is_atomic = false;
    AtomicType atomic{};
    ComplexType complex{};

    std::string name() const;
    bool operator==(const EventTypeRef&) const = default;
};

struct RoleRef {
    int operand = 0;       // operand index within the pattern
    std::string role;
};

/// Closed predicate set of the rule language, compiled form.
struct Predicate {
    enum class Kind {
        TeamEq, TeamNe,       // team(a) == / != team(b)
        IdEq, IdNe,           // a == / != b
        Goalkeeper,           // goalkeeper(a)
        Zone,                 // zone(a, name), at a's operand start frame
        AheadOfDefence,       // nearest_to_goal_among_opponents(a, <operand>)
        OnTarget,             // on_target(<operand>): kick aimed inside the mouth
        And, Or, Not,
    };
    Kind kind = Kind::And;
    RoleRef a, b;
    ZoneKind zone = ZoneKind::SidelineBand;
    int time_operand = 0;     // AheadOfDefence: operand whose start frame is used
    int operand = 0;          // OnTarget
    std::vector<Predicate> children;
};

struct EmitRole {
    std::string target;   // role name on the emitted event
    RoleRef source;
};

struct CompiledPattern {
    PatternOp op = PatternOp::Leaf;
    std::vector<EventTypeRef> operands;
    int max_gap = 0;                                  // Seq only
    std::optional<std::pair<int, int>> duration;      // min,max frames
    std::optional<Predicate> where;
    std::vector<EmitRole> emits;
};

struct CompiledRule {
    ComplexType type{};
    std::vector<CompiledPattern> alternatives;  // union semantics
};

struct CompiledRuleSet {
    std::vector<CompiledRule> rules;  // dependency order
};

struct ComplexOptions {
    int merge_gap = 5;  // G_merge: possession/tackle runs bridge gaps <= this
};

/// Maximal runs of BallPossession atoms with the same player (and Tackle
/// atoms with the same player pair), bridging gaps <= merge_gap frames.
std::vector<IntervalEvent> merge_possession(const std::vector<AtomicEvent>& atomics,
                                            int merge_gap = 5);

/// THEN operator: [start(e1), end(e2)] iff end(e1) <= start(e2) and the gap
/// is at most max_gap.
std::optional<std::pair<int, int>> seq_match(std::pair<int, int> e1, std::pair<int, int> e2,
                                             int max_gap);

/// Merged possession/tackle intervals plus all rule instances, in dependency
/// order. The trace view supplies positions for the spatial predicates.
std::vector<IntervalEvent> detect_complex(const std::vector<AtomicEvent>& atomics,
                                          const TraceView& view, const CompiledRuleSet& rules,
                                          const ComplexOptions& opts = {});

struct DurationSummary {
    std::string type;
    int count = 0;
    int min_frames = 0;
    double mean_frames = 0.0;
    int max_frames = 0;
    double mean_seconds = 0.0;
};

std::vector<DurationSummary> duration_stats(const std::vector<IntervalEvent>& events, double fps);
std::string duration_stats_csv(const std::vector<DurationSummary>& stats);

// Spatial helpers shared with the scenario generator and hand-written rules.
bool in_zone(const TraceView& view, int frame, int object_id, ZoneKind zone, Team attacking);
bool ahead_of_defence(const TraceView& view, int frame, int object_id);
bool kick_on_target(const TraceView& view, const AtomicEvent& kick);

}  // namespace socev
