#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace socev {

enum class AtomicType {
    KickingTheBall,
    BallPossession,
    Tackle,
    BallDeflection,
    BallOut,
    Goal,
};

enum class ComplexType {
    BallPossession,
    Tackle,
    WonTackle,
    LostTackle,
    Pass,
    Cross,
    FilteringPass,
    PassThenGoal,
    CrossThenGoal,
    FilteringPassThenGoal,
    Shot,
    ShotOut,
    ShotThenGoal,
    SavedShot,
};

std::string atomic_type_name(AtomicType t);
std::string complex_type_name(ComplexType t);
std::optional<AtomicType> atomic_type_from_name(const std::string& s);
std::optional<ComplexType> complex_type_from_name(const std::string& s);

// Role vocabulary (kept as strings so the rule DSL can reference them).
namespace roles {
inline constexpr const char* KickingPlayer = "KickingPlayer";
inline constexpr const char* KickedObject = "KickedObject";
inline constexpr const char* PossessingPlayer = "PossessingPlayer";
inline constexpr const char* PossessedObject = "PossessedObject";
inline constexpr const char* TacklingPlayer = "TacklingPlayer";
inline constexpr const char* DeflectingPlayer = "DeflectingPlayer";
inline constexpr const char* DeflectedObject = "DeflectedObject";
inline constexpr const char* OutObject = "OutObject";
inline constexpr const char* Scorer = "Scorer";
inline constexpr const char* ReceivingPlayer = "ReceivingPlayer";
inline constexpr const char* Shooter = "Shooter";
inline constexpr const char* GoalKeeper = "GoalKeeper";
}  // namespace roles

using RoleMap = std::map<std::string, int>;

struct AtomicEvent {
    std::int64_t id = 0;
    AtomicType type = AtomicType::KickingTheBall;
    int t = 0;
    RoleMap roles;
};

struct IntervalEvent {
    std::int64_t id = 0;
    ComplexType type = ComplexType::Pass;
    int start = 0;
    int end = 0;
    RoleMap roles;
    std::vector<std::int64_t> sub_events;

    int duration_frames() const { return end - start + 1; }
};

struct EventLog {
    std::vector<AtomicEvent> atomic;
    std::vector<IntervalEvent> complex;

    void sort_and_renumber();
};

/// Declared roles per event type, used by the DSL semantic checker.
const std::vector<std::string>& atomic_roles(AtomicType t);

}  // namespace socev
