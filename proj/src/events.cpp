#include "socev/events.hpp"

#include <algorithm>

namespace socev {

std::string atomic_type_name(AtomicType t) {
    switch (t) {
        case AtomicType::KickingTheBall: return "KickingTheBall";
        case AtomicType::BallPossession: return "BallPossession";
        case AtomicType::Tackle: return "Tackle";
        case AtomicType::BallDeflection: return "BallDeflection";
        case AtomicType::BallOut: return "BallOut";
        case AtomicType::Goal: return "Goal";
    }
    return "?";
}

std::string complex_type_name(ComplexType t) {
    switch (t) {
        case ComplexType::BallPossession: return "BallPossession";
        case ComplexType::Tackle: return "Tackle";
        case ComplexType::WonTackle: return "WonTackle";
        case ComplexType::LostTackle: return "LostTackle";
        case ComplexType::Pass: return "Pass";
        case ComplexType::Cross: return "Cross";
        case ComplexType::FilteringPass: return "FilteringPass";
        case ComplexType::PassThenGoal: return "PassThenGoal";
        case ComplexType::CrossThenGoal: return "CrossThenGoal";
        case ComplexType::FilteringPassThenGoal: return "FilteringPassThenGoal";
        case ComplexType::Shot: return "Shot";
        case ComplexType::ShotOut: return "ShotOut";
        case ComplexType::ShotThenGoal: return "ShotThenGoal";
        case ComplexType::SavedShot: return "SavedShot";
    }
    return "?";
}

std::optional<AtomicType> atomic_type_from_name(const std::string& s) {
    static const AtomicType all[] = {
        AtomicType::KickingTheBall, AtomicType::BallPossession, AtomicType::Tackle,
        AtomicType::BallDeflection, AtomicType::BallOut, AtomicType::Goal};
    for (auto t : all)
        if (atomic_type_name(t) == s) return t;
    return std::nullopt;
}

std::optional<ComplexType> complex_type_from_name(const std::string& s) {
    static const ComplexType all[] = {
        ComplexType::BallPossession, ComplexType::Tackle, ComplexType::WonTackle,
        ComplexType::LostTackle, ComplexType::Pass, ComplexType::Cross,
        ComplexType::FilteringPass, ComplexType::PassThenGoal, ComplexType::CrossThenGoal,
        ComplexType::FilteringPassThenGoal, ComplexType::Shot, ComplexType::ShotOut,
        ComplexType::ShotThenGoal, ComplexType::SavedShot};
    for (auto t : all)
        if (complex_type_name(t) == s) return t;
    return std::nullopt;
}

void EventLog::sort_and_renumber() {
    std::stable_sort(atomic.begin(), atomic.end(), [](const auto& a, const auto& b) {
        return a.t != b.t ? a.t < b.t : a.type < b.type;
    });
    std::stable_sort(complex.begin(), complex.end(), [](const auto& a, const auto& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end < b.end;
        return a.type < b.type;
    });
    std::int64_t next = 1;
    for (auto& e : atomic) e.id = next++;
    for (auto& e : complex) e.id = next++;
}

const std::vector<std::string>& atomic_roles(AtomicType t) {
    static const std::vector<std::string> kick = {roles::KickingPlayer, roles::KickedObject};
    static const std::vector<std::string> poss = {roles::PossessingPlayer, roles::PossessedObject};
    static const std::vector<std::string> tackle = {roles::PossessingPlayer,
                                                    roles::TacklingPlayer,
                                                    roles::PossessedObject};
    static const std::vector<std::string> defl = {roles::DeflectingPlayer, roles::DeflectedObject};
    static const std::vector<std::string> out = {roles::OutObject};
    static const std::vector<std::string> goal = {roles::Scorer};
    switch (t) {
        case AtomicType::KickingTheBall: return kick;
        case AtomicType::BallPossession: return poss;
        case AtomicType::Tackle: return tackle;
        case AtomicType::BallDeflection: return defl;
        case AtomicType::BallOut: return out;
        case AtomicType::Goal: return goal;
    }
    return out;
}

}  // namespace socev
