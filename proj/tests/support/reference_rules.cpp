#include "support/reference_rules.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace refimpl {

using namespace socev;

namespace {

struct Inst {
    int start = 0;
    int end = 0;
    RoleMap roles;
};

bool inst_less(const Inst& a, const Inst& b) {
    return std::tie(a.start, a.end, a.roles) < std::tie(b.start, b.end, b.roles);
}

std::vector<Inst> atoms_of(const std::vector<AtomicEvent>& atoms, AtomicType type) {
    std::vector<Inst> out;
    for (const auto& a : atoms)
        if (a.type == type) out.push_back({a.t, a.t, a.roles});
    std::sort(out.begin(), out.end(), inst_less);
    return out;
}

// Nearest instance starting at or after `after`, within `max_gap` frames.
const Inst* follow(const std::vector<Inst>& pool, int after, int max_gap) {
    const Inst* best = nullptr;
    for (const auto& e : pool) {
        if (e.start < after) continue;
        if (max_gap >= 0 && e.start - after > max_gap) continue;
        if (!best || std::tie(e.start, e.end) < std::tie(best->start, best->end)) best = &e;
    }
    return best;
}

// Maximal same-key runs bridging gaps of at most merge_gap missing frames.
std::vector<Inst> runs(const std::vector<Inst>& atoms,
                       const std::function<std::pair<int, int>(const Inst&)>& key,
                       int merge_gap) {
    std::map<std::pair<int, int>, Inst> open;
    std::vector<Inst> out;
    for (const auto& a : atoms) {
        auto k = key(a);
        auto it = open.find(k);
        if (it != open.end() && a.start <= it->second.end + merge_gap + 1) {
            it->second.end = a.end;
        } else {
            if (it != open.end()) out.push_back(it->second);
            open.erase(k);
            open.emplace(k, a);
        }
    }
    for (auto& [k, r] : open) out.push_back(r);
    std::sort(out.begin(), out.end(), inst_less);
    return out;
}

struct Helper {
    const TraceView& view;

    Team team_of(int id) const { return view.object(id).team; }

    double goal_line_x(Team attacking) const {
        return attacking == Team::Home ? view.geometry().length_m : 0.0;
    }

    bool on_target(const Inst& kick) const {
        auto it = kick.roles.find(roles::KickingPlayer);
        if (it == kick.roles.end()) return false;
        Team team = team_of(it->second);
        if (team == Team::None) return false;
        int t = kick.start;
        if (!view.has_frame(t + 1) || !view.has_frame(t + 2)) return false;
        int ball = view.ball_id();
        Vec2 p1 = view.position(t + 1, ball);
        Vec2 p2 = view.position(t + 2, ball);
        double vx = p2.x - p1.x, vy = p2.y - p1.y;
        double tx = goal_line_x(team);
        double to_line = tx - p1.x;
        if (vx == 0.0 || (vx > 0) != (to_line > 0)) return false;
        double y = p1.y + vy * (to_line / vx);
        const auto& g = view.geometry();
        return y >= g.width_m / 2 - g.goal_mouth_width_m / 2 &&
               y <= g.width_m / 2 + g.goal_mouth_width_m / 2;
    }

    bool sideline_band(Vec2 p) const {
        const auto& g = view.geometry();
        return p.y < g.sideline_band_m || p.y > g.width_m - g.sideline_band_m;
    }

    bool attacking_third(Vec2 p, Team attacking) const {
        const auto& g = view.geometry();
        return attacking == Team::Home ? p.x > 2.0 * g.length_m / 3.0 : p.x < g.length_m / 3.0;
    }

    bool goal_area(Vec2 p) const {
        const auto& g = view.geometry();
        double half = g.goal_mouth_width_m / 2 + g.goal_area_depth_m;
        return std::abs(p.y - g.width_m / 2) <= half &&
               (p.x <= g.goal_area_depth_m || p.x >= g.length_m - g.goal_area_depth_m);
    }

    bool behind_goal_line(Vec2 p) const {
        return p.x < 0.0 || p.x > view.geometry().length_m;
    }

    bool nearest_to_goal(int id, int frame) const {
        Team team = team_of(id);
        if (team == Team::None) return false;
        const auto& g = view.geometry();
        Vec2 goal{goal_line_x(team), g.width_m / 2};
        Vec2 me = view.position(frame, id);
        double mine = std::hypot(me.x - goal.x, me.y - goal.y);
        for (const auto& o : view.roster()) {
            if (o.cls != ObjectClass::Player || o.team == team || o.team == Team::None ||
                o.goalkeeper)
                continue;
            Vec2 p = view.position(frame, o.id);
            if (std::hypot(p.x - goal.x, p.y - goal.y) <= mine) return false;
        }
        return true;
    }
};

void dedup(std::vector<Inst>& v) {
    std::sort(v.begin(), v.end(), inst_less);
    v.erase(std::unique(v.begin(), v.end(),
                        [](const Inst& a, const Inst& b) {
                            return a.start == b.start && a.end == b.end && a.roles == b.roles;
                        }),
            v.end());
}

}  // namespace

std::vector<IntervalEvent> reference_complex(const std::vector<AtomicEvent>& atoms,
                                             const TraceView& view, int merge_gap) {
    Helper h{view};

    auto kicks = atoms_of(atoms, AtomicType::KickingTheBall);
    auto poss = atoms_of(atoms, AtomicType::BallPossession);
    auto tackles = atoms_of(atoms, AtomicType::Tackle);
    auto deflections = atoms_of(atoms, AtomicType::BallDeflection);
    auto outs = atoms_of(atoms, AtomicType::BallOut);
    auto goals = atoms_of(atoms, AtomicType::Goal);

    auto poss_runs = runs(poss, [](const Inst& a) {
        return std::pair<int, int>{a.roles.at(roles::PossessingPlayer), -1};
    }, merge_gap);
    auto tackle_runs = runs(tackles, [](const Inst& a) {
        int x = a.roles.at(roles::PossessingPlayer);
        int y = a.roles.at(roles::TacklingPlayer);
        return std::pair<int, int>{std::min(x, y), std::max(x, y)};
    }, merge_gap);

    // Shot: an on-target kick.
    std::vector<Inst> shots;
    for (const auto& k : kicks)
        if (h.on_target(k))
            shots.push_back({k.start, k.end, {{roles::Shooter, k.roles.at(roles::KickingPlayer)}}});
    dedup(shots);

    std::vector<Inst> shot_out, shot_goal, saved;
    for (const auto& s : shots) {
        int shooter = s.roles.at(roles::Shooter);
        if (const Inst* o = follow(outs, s.end, 150))
            if (h.behind_goal_line(view.position(o->start, view.ball_id())))
                shot_out.push_back({s.start, o->end, {{roles::Shooter, shooter}}});
        if (const Inst* g = follow(goals, s.end, 150)) {
            auto sc = g->roles.find(roles::Scorer);
            if (sc != g->roles.end() && sc->second == shooter)
                shot_goal.push_back(
                    {s.start, g->end, {{roles::Shooter, shooter}, {roles::Scorer, shooter}}});
        }
        if (const Inst* d = follow(deflections, s.end, 150)) {
            int who = d->roles.at(roles::DeflectingPlayer);
            if (view.object(who).goalkeeper && h.team_of(who) != h.team_of(shooter))
                saved.push_back(
                    {s.start, d->end, {{roles::Shooter, shooter}, {roles::GoalKeeper, who}}});
        }
        if (const Inst* p = follow(poss, s.end, 150)) {
            int who = p->roles.at(roles::PossessingPlayer);
            if (view.object(who).goalkeeper && h.team_of(who) != h.team_of(shooter))
                saved.push_back(
                    {s.start, p->end, {{roles::Shooter, shooter}, {roles::GoalKeeper, who}}});
        }
    }
    dedup(shot_out);
    dedup(shot_goal);
    dedup(saved);

    // The pass family: a kick chained to the nearest following possession atom.
    std::vector<Inst> passes, crosses, filtering;
    for (const auto& k : kicks) {
        const Inst* p = follow(poss, k.end, 90);
        if (!p) continue;
        int kicker = k.roles.at(roles::KickingPlayer);
        int receiver = p->roles.at(roles::PossessingPlayer);
        if (h.team_of(kicker) != h.team_of(receiver) || kicker == receiver) continue;
        RoleMap r{{roles::KickingPlayer, kicker}, {roles::ReceivingPlayer, receiver}};
        Inst inst{k.start, p->end, r};
        passes.push_back(inst);
        Vec2 kick_pos = view.position(k.start, kicker);
        Vec2 recv_pos = view.position(p->start, receiver);
        if (h.sideline_band(kick_pos) && h.attacking_third(kick_pos, h.team_of(kicker)) &&
            h.goal_area(recv_pos))
            crosses.push_back(inst);
        if (h.nearest_to_goal(receiver, k.start)) filtering.push_back(inst);
    }
    dedup(passes);
    dedup(crosses);
    dedup(filtering);

    auto chain_goal = [&](const std::vector<Inst>& heads) {
        std::vector<Inst> out;
        for (const auto& a : heads) {
            const Inst* g = follow(goals, a.end, 150);
            if (!g) continue;
            auto sc = g->roles.find(roles::Scorer);
            if (sc == g->roles.end() || sc->second != a.roles.at(roles::ReceivingPlayer)) continue;
            RoleMap r = a.roles;
            r[roles::Scorer] = sc->second;
            out.push_back({a.start, g->end, r});
        }
        dedup(out);
        return out;
    };
    auto pass_goal = chain_goal(passes);
    auto cross_goal = chain_goal(crosses);
    auto filtering_goal = chain_goal(filtering);

    std::vector<Inst> won, lost;
    for (const auto& t : tackle_runs) {
        const Inst* p = follow(poss, t.end, 150);
        if (!p) continue;
        int tackler = t.roles.at(roles::TacklingPlayer);
        int possessor = t.roles.at(roles::PossessingPlayer);
        bool same = h.team_of(tackler) == h.team_of(p->roles.at(roles::PossessingPlayer));
        RoleMap r{{roles::TacklingPlayer, tackler}, {roles::PossessingPlayer, possessor}};
        (same ? won : lost).push_back({t.start, p->end, r});
    }
    dedup(won);
    dedup(lost);

    std::vector<IntervalEvent> out;
    auto push = [&](ComplexType type, const std::vector<Inst>& list) {
        for (const auto& i : list) {
            IntervalEvent e;
            e.type = type;
            e.start = i.start;
            e.end = i.end;
            e.roles = i.roles;
            out.push_back(std::move(e));
        }
    };
    push(ComplexType::BallPossession, poss_runs);
    push(ComplexType::Tackle, tackle_runs);
    push(ComplexType::Shot, shots);
    push(ComplexType::ShotOut, shot_out);
    push(ComplexType::ShotThenGoal, shot_goal);
    push(ComplexType::SavedShot, saved);
    push(ComplexType::Pass, passes);
    push(ComplexType::Cross, crosses);
    push(ComplexType::FilteringPass, filtering);
    push(ComplexType::PassThenGoal, pass_goal);
    push(ComplexType::CrossThenGoal, cross_goal);
    push(ComplexType::FilteringPassThenGoal, filtering_goal);
    push(ComplexType::WonTackle, won);
    push(ComplexType::LostTackle, lost);

    std::sort(out.begin(), out.end(), [](const IntervalEvent& a, const IntervalEvent& b) {
        return std::tie(a.start, a.end, a.type, a.roles) <
               std::tie(b.start, b.end, b.type, b.roles);
    });
    return out;
}

}  // namespace refimpl
