#include "socev/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "socev/features.hpp"

namespace socev {

std::string zone_name(ZoneKind z) {
    switch (z) {
        case ZoneKind::SidelineBand: return "sideline_band";
        case ZoneKind::GoalArea: return "goal_area";
        case ZoneKind::AttackingThird: return "attacking_third";
        case ZoneKind::BehindGoalLine: return "behind_goal_line";
    }
    return "?";
}

std::optional<ZoneKind> zone_from_name(const std::string& s) {
    for (auto z : {ZoneKind::SidelineBand, ZoneKind::GoalArea, ZoneKind::AttackingThird,
                   ZoneKind::BehindGoalLine})
        if (zone_name(z) == s) return z;
    return std::nullopt;
}

std::string EventTypeRef::name() const {
    return is_atomic ? atomic_type_name(atomic) : complex_type_name(complex);
}

std::vector<IntervalEvent> merge_possession(const std::vector<AtomicEvent>& atomics,
                                            int merge_gap) {
    struct Run {
        IntervalEvent ev;
        int last = 0;
    };
    // key: (possessing player, tackling player or -1)
    std::map<std::pair<int, int>, Run> open;
    std::vector<IntervalEvent> out;

    auto flush = [&](Run& r) { out.push_back(std::move(r.ev)); };

    std::vector<const AtomicEvent*> sorted;
    for (const auto& a : atomics)
        if (a.type == AtomicType::BallPossession || a.type == AtomicType::Tackle)
            sorted.push_back(&a);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const AtomicEvent* x, const AtomicEvent* y) { return x->t < y->t; });

    for (const AtomicEvent* a : sorted) {
        std::pair<int, int> key;
        if (a->type == AtomicType::BallPossession) {
            key = {a->roles.at(roles::PossessingPlayer), -1};
        } else {
            int p = a->roles.at(roles::PossessingPlayer);
            int q = a->roles.at(roles::TacklingPlayer);
            key = {std::min(p, q), std::max(p, q)};
        }
        auto it = open.find(key);
        if (it != open.end() && a->t - it->second.last - 1 <= merge_gap) {
            it->second.ev.end = a->t;
            it->second.ev.sub_events.push_back(a->id);
            it->second.last = a->t;
            continue;
        }
        if (it != open.end()) {
            flush(it->second);
            open.erase(it);
        }
        Run r;
        r.ev.type = a->type == AtomicType::BallPossession ? ComplexType::BallPossession
                                                          : ComplexType::Tackle;
        r.ev.start = r.ev.end = a->t;
        r.ev.roles = a->roles;  // roles come from the first atom of the run
        r.ev.sub_events = {a->id};
        r.last = a->t;
        open.emplace(key, std::move(r));
    }
    for (auto& [key, r] : open) flush(r);
    std::sort(out.begin(), out.end(), [](const IntervalEvent& x, const IntervalEvent& y) {
        if (x.start != y.start) return x.start < y.start;
        return x.end < y.end;
    });
    return out;
}

std::optional<std::pair<int, int>> seq_match(std::pair<int, int> e1, std::pair<int, int> e2,
                                             int max_gap) {
    int gap = e2.first - e1.second;
    if (gap < 0) return std::nullopt;
    if (max_gap >= 0 && gap > max_gap) return std::nullopt;
    return std::make_pair(e1.first, e2.second);
}

// --- spatial helpers ---------------------------------------------------------

bool in_zone(const TraceView& view, int frame, int object_id, ZoneKind zone, Team attacking) {
    const auto& g = view.geometry();
    Vec2 p = view.position(frame, object_id);
    switch (zone) {
        case ZoneKind::SidelineBand:
            return p.y < g.sideline_band_m || p.y > g.width_m - g.sideline_band_m;
        case ZoneKind::GoalArea: {
            double half = g.goal_area_half_width();
            bool in_y = std::abs(p.y - g.width_m / 2.0) <= half;
            return in_y && (p.x <= g.goal_area_depth_m || p.x >= g.length_m - g.goal_area_depth_m);
        }
        case ZoneKind::AttackingThird:
            return attacking == Team::Home ? p.x > 2.0 * g.length_m / 3.0
                                           : p.x < g.length_m / 3.0;
        case ZoneKind::BehindGoalLine:
            return p.x < 0.0 || p.x > g.length_m;
    }
    return false;
}

bool ahead_of_defence(const TraceView& view, int frame, int object_id) {
    const auto& info = view.object(object_id);
    if (info.team == Team::None) return false;
    const auto& g = view.geometry();
    Vec2 goal{target_line_x(g, info.team), g.width_m / 2};
    double mine = distance(view.position(frame, object_id), goal);
    for (const auto& o : view.roster()) {
        if (o.cls != ObjectClass::Player || o.team == info.team || o.team == Team::None) continue;
        if (o.goalkeeper) continue;
        if (distance(view.position(frame, o.id), goal) <= mine) return false;
    }
    return true;
}

bool kick_on_target(const TraceView& view, const AtomicEvent& kick) {
    auto it = kick.roles.find(roles::KickingPlayer);
    if (it == kick.roles.end()) return false;
    Team team = view.object(it->second).team;
    if (team == Team::None) return false;
    int t = kick.t;
    if (!view.has_frame(t + 1) || !view.has_frame(t + 2)) return false;
    // The ball is still at the foot at the kick frame; the outgoing velocity
    // shows up one frame later.
    int ball = view.ball_id();
    Vec2 p1 = view.position(t + 1, ball);
    Vec2 p2 = view.position(t + 2, ball);
    Vec2 v = (p2 - p1) * view.fps();
    auto y = ray_cross_y(p1, v, target_line_x(view.geometry(), team));
    return y && view.geometry().in_mouth(*y);
}

// --- pattern matching --------------------------------------------------------

namespace {

struct Universe {
    std::map<AtomicType, std::vector<IntervalEvent>> atomic;
    std::map<ComplexType, std::vector<IntervalEvent>> complex;

    const std::vector<IntervalEvent>& of(const EventTypeRef& ref) const {
        static const std::vector<IntervalEvent> empty;
        if (ref.is_atomic) {
            auto it = atomic.find(ref.atomic);
            return it == atomic.end() ? empty : it->second;
        }
        auto it = complex.find(ref.complex);
        return it == complex.end() ? empty : it->second;
    }
};

using Binding = std::vector<const IntervalEvent*>;

std::optional<int> resolve(const Binding& b, const RoleRef& r) {
    const IntervalEvent* ev = b.at(r.operand);
    auto it = ev->roles.find(r.role);
    if (it == ev->roles.end()) return std::nullopt;
    return it->second;
}

bool eval_pred(const Predicate& p, const Binding& b, const TraceView& view) {
    switch (p.kind) {
        case Predicate::Kind::TeamEq:
        case Predicate::Kind::TeamNe: {
            auto ia = resolve(b, p.a);
            auto ib = resolve(b, p.b);
            if (!ia || !ib) return false;
            bool eq = view.object(*ia).team == view.object(*ib).team;
            return p.kind == Predicate::Kind::TeamEq ? eq : !eq;
        }
        case Predicate::Kind::IdEq:
        case Predicate::Kind::IdNe: {
            auto ia = resolve(b, p.a);
            auto ib = resolve(b, p.b);
            if (!ia || !ib) return false;
            return p.kind == Predicate::Kind::IdEq ? *ia == *ib : *ia != *ib;
        }
        case Predicate::Kind::Goalkeeper: {
            auto ia = resolve(b, p.a);
            return ia && view.object(*ia).goalkeeper;
        }
        case Predicate::Kind::Zone: {
            auto ia = resolve(b, p.a);
            if (!ia) return false;
            int frame = b.at(p.a.operand)->start;
            if (!view.has_frame(frame)) return false;
            return in_zone(view, frame, *ia, p.zone, view.object(*ia).team);
        }
        case Predicate::Kind::AheadOfDefence: {
            auto ia = resolve(b, p.a);
            if (!ia) return false;
            int frame = b.at(p.time_operand)->start;
            if (!view.has_frame(frame)) return false;
            return ahead_of_defence(view, frame, *ia);
        }
        case Predicate::Kind::OnTarget: {
            const IntervalEvent* ev = b.at(p.operand);
            AtomicEvent kick;
            kick.t = ev->start;
            kick.roles = ev->roles;
            return kick_on_target(view, kick);
        }
        case Predicate::Kind::And:
            for (const auto& c : p.children)
                if (!eval_pred(c, b, view)) return false;
            return true;
        case Predicate::Kind::Or:
            for (const auto& c : p.children)
                if (eval_pred(c, b, view)) return true;
            return false;
        case Predicate::Kind::Not:
            return !eval_pred(p.children.at(0), b, view);
    }
    return false;
}

void finish_match(const CompiledPattern& pat, ComplexType type, const Binding& b,
                  const TraceView& view, std::vector<IntervalEvent>& out) {
    int start = b.front()->start;
    int end = 0;
    for (const auto* ev : b) end = std::max(end, ev->end);
    if (pat.duration) {
        int len = end - start + 1;
        if (len < pat.duration->first || len > pat.duration->second) return;
    }
    if (pat.where && !eval_pred(*pat.where, b, view)) return;
    IntervalEvent ev;
    ev.type = type;
    ev.start = start;
    ev.end = end;
    for (const auto& e : pat.emits) {
        auto id = resolve(b, e.source);
        if (id) ev.roles[e.target] = *id;
    }
    for (const auto* sub : b) ev.sub_events.push_back(sub->id);
    out.push_back(std::move(ev));
}

void match_pattern(const CompiledPattern& pat, ComplexType type, const Universe& uni,
                   const TraceView& view, std::vector<IntervalEvent>& out) {
    const auto& first = uni.of(pat.operands.at(0));
    if (pat.op == PatternOp::Leaf) {
        for (const auto& e : first) finish_match(pat, type, {&e}, view, out);
        return;
    }
    if (pat.op == PatternOp::Seq) {
        // For each head instance chain to the nearest-following instance of
        // each later operand; constraints first, the where clause filters after.
        for (const auto& head : first) {
            Binding b{&head};
            bool ok = true;
            for (size_t i = 1; i < pat.operands.size() && ok; ++i) {
                const auto& cand = uni.of(pat.operands[i]);
                const IntervalEvent* best = nullptr;
                for (const auto& c : cand) {
                    if (!seq_match({b.back()->start, b.back()->end}, {c.start, c.end},
                                   pat.max_gap))
                        continue;
                    if (!best || c.start < best->start ||
                        (c.start == best->start && c.end < best->end)) {
                        best = &c;
                    }
                }
                if (!best) ok = false;
                else b.push_back(best);
            }
            if (ok) finish_match(pat, type, b, view, out);
        }
        return;
    }
    // And: every combination whose intervals pairwise overlap.
    Binding b;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == pat.operands.size()) {
            finish_match(pat, type, b, view, out);
            return;
        }
        for (const auto& c : uni.of(pat.operands[i])) {
            bool overlaps = true;
            for (const auto* prev : b)
                overlaps = overlaps && c.start <= prev->end && prev->start <= c.end;
            if (!overlaps) continue;
            b.push_back(&c);
            rec(i + 1);
            b.pop_back();
        }
    };
    rec(0);
}

}  // namespace

std::vector<IntervalEvent> detect_complex(const std::vector<AtomicEvent>& atomics,
                                          const TraceView& view, const CompiledRuleSet& rules,
                                          const ComplexOptions& opts) {
    Universe uni;
    for (const auto& a : atomics) {
        IntervalEvent ev;
        ev.id = a.id;
        ev.type = ComplexType::BallPossession;  // unused for atomic instances
        ev.start = ev.end = a.t;
        ev.roles = a.roles;
        uni.atomic[a.type].push_back(std::move(ev));
    }

    std::int64_t next_id = 1;
    std::vector<IntervalEvent> all;
    auto publish = [&](ComplexType type, std::vector<IntervalEvent> evs) {
        for (auto& e : evs) {
            e.id = next_id++;
            uni.complex[type].push_back(e);
            all.push_back(std::move(e));
        }
    };

    publish(ComplexType::BallPossession, [&] {
        auto merged = merge_possession(atomics, opts.merge_gap);
        std::vector<IntervalEvent> only;
        for (auto& m : merged)
            if (m.type == ComplexType::BallPossession) only.push_back(std::move(m));
        return only;
    }());
    publish(ComplexType::Tackle, [&] {
        auto merged = merge_possession(atomics, opts.merge_gap);
        std::vector<IntervalEvent> only;
        for (auto& m : merged)
            if (m.type == ComplexType::Tackle) only.push_back(std::move(m));
        return only;
    }());

    for (const auto& rule : rules.rules) {
        std::vector<IntervalEvent> found;
        for (const auto& alt : rule.alternatives)
            match_pattern(alt, rule.type, uni, view, found);
        // union of the alternatives, duplicates collapsed
        std::sort(found.begin(), found.end(), [](const IntervalEvent& x, const IntervalEvent& y) {
            if (x.start != y.start) return x.start < y.start;
            if (x.end != y.end) return x.end < y.end;
            return x.roles < y.roles;
        });
        found.erase(std::unique(found.begin(), found.end(),
                                [](const IntervalEvent& x, const IntervalEvent& y) {
                                    return x.start == y.start && x.end == y.end &&
                                           x.roles == y.roles;
                                }),
                    found.end());
        publish(rule.type, std::move(found));
    }

    std::sort(all.begin(), all.end(), [](const IntervalEvent& x, const IntervalEvent& y) {
        if (x.start != y.start) return x.start < y.start;
        if (x.end != y.end) return x.end < y.end;
        return static_cast<int>(x.type) < static_cast<int>(y.type);
    });
    return all;
}

std::vector<DurationSummary> duration_stats(const std::vector<IntervalEvent>& events,
                                            double fps) {
    std::map<std::string, std::vector<int>> lens;
    // Durations are elapsed frames (end - start): an interval spanning
    // [100,130] at 30 fps lasts one second. The +1 closed-interval length is
    // reserved for IoU matching, where overlap is counted per frame.
    for (const auto& e : events) lens[complex_type_name(e.type)].push_back(e.end - e.start);
    std::vector<DurationSummary> out;
    for (auto& [name, v] : lens) {
        DurationSummary s;
        s.type = name;
        s.count = static_cast<int>(v.size());
        s.min_frames = *std::min_element(v.begin(), v.end());
        s.max_frames = *std::max_element(v.begin(), v.end());
        double sum = 0;
        for (int x : v) sum += x;
        s.mean_frames = sum / v.size();
        s.mean_seconds = s.mean_frames / fps;
        out.push_back(std::move(s));
    }
    return out;
}

std::string duration_stats_csv(const std::vector<DurationSummary>& stats) {
    std::ostringstream os;
    os << "type,count,min_frames,mean_frames,max_frames,mean_seconds\n";
    for (const auto& s : stats) {
        os << s.type << ',' << s.count << ',' << s.min_frames << ',' << s.mean_frames << ','
           << s.max_frames << ',' << s.mean_seconds << '\n';
    }
    return os.str();
}

}  // namespace socev
