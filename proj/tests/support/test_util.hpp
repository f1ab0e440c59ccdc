#pragma once

// Shared helpers for building tiny hand-positioned traces in tests.

#include <utility>
#include <vector>

#include "socev/trace.hpp"

namespace testutil {

/// Roster: ball id 0, home players 1..home (1 is the goalkeeper), away
/// players home+1..home+away (home+1 is the goalkeeper).
inline socev::Trace make_trace(int home, int away, double fps = 30.0) {
    using namespace socev;
    std::vector<ObjectInfo> roster;
    roster.push_back({0, ObjectClass::Ball, Team::None, false});
    for (int i = 1; i <= home; ++i)
        roster.push_back({i, ObjectClass::Player, Team::Home, i == 1});
    for (int i = 1; i <= away; ++i)
        roster.push_back({home + i, ObjectClass::Player, Team::Away, i == 1});
    return Trace(std::move(roster), fps);
}

/// Appends one frame; positions follow roster order (ball first).
inline void add_frame(socev::Trace& t, std::vector<socev::Vec2> positions) {
    socev::Frame f;
    f.index = t.size();
    f.positions = std::move(positions);
    t.append_frame(std::move(f));
}

/// Repeats the last appended frame n more times.
inline void hold(socev::Trace& t, int n) {
    for (int i = 0; i < n; ++i) add_frame(t, t.frame(t.size() - 1).positions);
}

/// First n frames of a trace as a new trace (shared roster and geometry).
inline socev::Trace truncate(const socev::Trace& t, int n) {
    socev::Trace out(t.roster(), t.fps(), t.geometry());
    for (int f = 0; f < n && f < t.size(); ++f) {
        socev::Frame fr = t.frame(f);
        out.append_frame(std::move(fr));
    }
    return out;
}

}  // namespace testutil
