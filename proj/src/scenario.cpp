#include "socev/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "socev/atomic.hpp"
#include "socev/complex.hpp"
#include "socev/features.hpp"
#include "socev/io.hpp"

namespace socev {

namespace {

constexpr double kFps = 30.0;
constexpr int kNumObjects = 23;
constexpr double kFootOffset = 0.3;   // ball-to-player distance while at the foot
constexpr double kFlightFloor = 6.8;  // keeps flight speed above the reference T_s
constexpr double kClearance = 3.0;    // parked players stay this far from the ball
constexpr int kChainHorizon = 150;    // max composition gap used by the rules
constexpr int kPassHorizon = 90;      // kick-to-reception bound of the pass rules
constexpr int kLeadDwell = 30;
constexpr int kTail = 45;

std::uint64_t smix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = a * 0x9E3779B97F4A7C15ULL ^ b * 0xBF58476D1CE4E5B9ULL ^
                      c * 0x94D049BB133111EBULL;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

Vec2 unit(Vec2 v) {
    double n = v.norm();
    return n > 0 ? v * (1.0 / n) : Vec2{1, 0};
}

Vec2 rot(Vec2 v, double a) {
    double c = std::cos(a), s = std::sin(a);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

std::vector<ObjectInfo> make_roster() {
    std::vector<ObjectInfo> r;
    r.push_back({0, ObjectClass::Ball, Team::None, false});
    for (int i = 1; i <= 11; ++i) r.push_back({i, ObjectClass::Player, Team::Home, i == 1});
    for (int i = 12; i <= 22; ++i) r.push_back({i, ObjectClass::Player, Team::Away, i == 12});
    return r;
}

struct Build {
    std::array<Vec2, kNumObjects> cur{};
    std::vector<std::array<Vec2, kNumObjects>> frames;
    std::set<int> actors;  // objects allowed near the ball

    struct PassIntent {
        int kf = 0;  // kick frame (detector-aligned, segment relative)
        int kicker = 0, receiver = 0;
        bool cross = false, filtering = false;
    };
    std::vector<PassIntent> passes;
    struct ShotIntent {
        int kf = 0;
        int shooter = 0;
    };
    std::vector<ShotIntent> shots;
    std::vector<AtomicEvent> atoms;  // closed-form truths, segment relative
    int goal_frame = -1, goal_scorer = -1;
    int out_frame = -1;
    int deflect_frame = -1;
    std::optional<int> tackle_winner;

    int next() const { return static_cast<int>(frames.size()); }

    void hold(int n) {
        for (int i = 0; i < n; ++i) frames.push_back(cur);
    }

    // Straight-line motion at constant speed; the final step may be shorter.
    void move(int id, Vec2 target, double speed) {
        while (true) {
            Vec2 d = target - cur[id];
            double dist = d.norm();
            if (dist < 1e-9) break;
            double step = speed / kFps;
            cur[id] = dist <= step ? target : cur[id] + d * (step / dist);
            frames.push_back(cur);
        }
    }

    // Ball flight with per-frame speeds along fixed or rotating direction.
    void fly(Vec2 dir, const std::vector<double>& speeds, double spin = 0.0) {
        Vec2 d = dir;
        for (size_t j = 0; j < speeds.size(); ++j) {
            if (j > 0 && spin != 0.0) d = rot(d, spin);
            cur[0] = cur[0] + d * (speeds[j] / kFps);
            frames.push_back(cur);
        }
    }

    void add_kick(int frame, int kicker) {
        AtomicEvent e;
        e.type = AtomicType::KickingTheBall;
        e.t = frame;
        e.roles[roles::KickingPlayer] = kicker;
        e.roles[roles::KickedObject] = 0;
        atoms.push_back(std::move(e));
    }
};

std::vector<double> decel_speeds(double v0, double mu, int n) {
    std::vector<double> out;
    double v = std::max(v0, 7.0);
    for (int j = 0; j < n; ++j) out.push_back(std::max(v - mu * j / kFps, kFlightFloor));
    return out;
}

void park_defaults(Build& b, bool filtering_layout, bool cover_goal = false) {
    b.cur[1] = {4, 34};                                        // home goalkeeper
    for (int i = 0; i < 10; ++i) b.cur[2 + i] = {8.0 + 5 * i, 2.0};
    b.cur[12] = {101, 14};                                     // away goalkeeper
    for (int i = 0; i < 10; ++i)
        b.cur[13 + i] = filtering_layout ? Vec2{8.0 + 4 * i, 66.0} : Vec2{55.0 + 5 * i, 66.0};
    if (cover_goal) b.cur[13] = {97, 30};  // a defender closer to goal than any receiver
}

double jitter(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

int jitter_frames(std::mt19937_64& rng, int base, int extra) {
    std::uniform_int_distribution<int> u(0, extra);
    return base + u(rng);
}

// Pass family; optionally the receiver finishes with an on-target shot.
Build build_pass(const ScenarioSpec& spec, bool cross, bool filtering, bool then_goal) {
    std::mt19937_64 rng(smix(spec.seed, static_cast<int>(spec.kind), 0x9a55));
    Build b;
    park_defaults(b, filtering, cross);
    Vec2 p0;
    Vec2 dir;
    if (cross) {
        p0 = {78, 6};
    } else if (filtering) {
        p0 = {50, 30};
        dir = unit({25, 10});
    } else {
        p0 = {40, 20};
        dir = unit({30, 25});
    }
    p0.x += jitter(rng, -1.5, 0.0);
    p0.y += jitter(rng, -1.0, 1.0);
    int kicker = 3, receiver = 4;
    b.actors = {0, kicker, receiver};
    b.cur[kicker] = p0;

    std::vector<double> speeds;
    Vec2 land;
    if (cross) {
        // Reception must land inside the goal-area box; fly at constant speed
        // so the deceleration cannot look like a deflection.
        land = {91 + jitter(rng, -1.0, 1.0), 40 + jitter(rng, -1.0, 1.0)};
        dir = unit(land - p0);
        double reach = (land - p0).norm() - kFootOffset;
        double vs = std::clamp(spec.v0, 14.0, 24.0);
        int nf = std::max(1, static_cast<int>(std::lround(reach / (vs / kFps))));
        speeds.assign(nf, reach * kFps / nf);
        if (speeds[0] <= kFlightFloor || speeds[0] >= 30.0)
            throw InfeasibleScript("cross flight speed out of range");
    } else {
        speeds = decel_speeds(spec.v0, spec.mu, 40);
        double dist = 0;
        for (double v : speeds) dist += v / kFps;
        land = p0 + dir * (kFootOffset + dist);
    }
    b.cur[0] = p0 + dir * kFootOffset;
    b.cur[receiver] = land + dir * kFootOffset;

    b.hold(jitter_frames(rng, kLeadDwell, 10));
    int last_at_foot = b.next() - 1;
    b.passes.push_back({last_at_foot - 1, kicker, receiver, cross, filtering});
    b.add_kick(last_at_foot - 1, kicker);
    b.fly(dir, speeds);
    b.hold(6);

    if (then_goal) {
        Vec2 mouth{105, 34};
        Vec2 dir2 = unit(mouth - b.cur[receiver]);
        Vec2 ball_target = b.cur[receiver] + dir2 * kFootOffset;
        b.move(0, ball_target, 2.0);  // work the ball around the foot
        b.hold(10);
        int shot_foot = b.next() - 1;
        b.shots.push_back({shot_foot - 1, receiver});
        b.add_kick(shot_foot - 1, receiver);
        double vs = std::clamp(spec.v0, 15.0, 22.0);
        while (b.cur[0].x <= 105.0 + 1.2) {
            b.cur[0] = b.cur[0] + dir2 * (vs / kFps);
            b.frames.push_back(b.cur);
            if (b.goal_frame < 0 && b.cur[0].x > 105.0) {
                b.goal_frame = b.next() - 1;
                b.goal_scorer = receiver;
            }
        }
        AtomicEvent g;
        g.type = AtomicType::Goal;
        g.t = b.goal_frame;
        g.roles[roles::Scorer] = receiver;
        b.atoms.push_back(std::move(g));
    }
    b.hold(kTail);
    return b;
}

Build build_tackle(const ScenarioSpec& spec, bool won) {
    std::mt19937_64 rng(smix(spec.seed, static_cast<int>(spec.kind), 0x7ac1));
    Build b;
    park_defaults(b, false);
    int a = 3, c = 15;  // possessor (home) and challenger (away)
    Vec2 pa{50 + jitter(rng, -1.5, 1.5), 25 + jitter(rng, -1.5, 1.5)};
    b.actors = {0, a, c};
    b.cur[a] = pa;
    b.cur[0] = pa + Vec2{kFootOffset, 0};
    b.cur[c] = pa + Vec2{10, 0};
    b.hold(jitter_frames(rng, kLeadDwell, 10));
    b.move(c, pa + Vec2{1.37, 0}, 5.0);  // close to within the contest radius
    b.hold(20);
    if (won) {
        // Slow transfer, below the kick speed; the 3.7 m/s step keeps the
        // ball off the exact midpoint between the players, where the
        // nearest-player choice would sit on a tie.
        b.move(0, pa + Vec2{1.07, 0}, 3.7);
        b.hold(12);
        b.move(a, pa + Vec2{-6, 0}, 2.0);
        b.tackle_winner = c;
    } else {
        b.hold(12);
        b.move(c, pa + Vec2{8, 0}, 2.0);
        b.tackle_winner = a;
    }
    b.hold(60);
    return b;
}

Build build_shot(const ScenarioSpec& spec, ScenarioKind kind) {
    std::mt19937_64 rng(smix(spec.seed, static_cast<int>(spec.kind), 0x5071));
    Build b;
    park_defaults(b, false);
    int shooter = 5;
    Vec2 p{(kind == ScenarioKind::ShotSaved ? 88.0 : 85.0) + jitter(rng, -1.0, 1.0),
           40 + jitter(rng, -1.0, 1.0)};
    b.actors = {0, shooter};
    Vec2 mouth{105, 34};
    Vec2 dir = unit(mouth - p);
    b.cur[shooter] = p;
    b.cur[0] = p + dir * kFootOffset;

    if (kind == ScenarioKind::ShotSaved) {
        b.actors.insert(12);
        double full = (mouth - b.cur[0]).norm();
        double reach = full - 4.0;  // contact ~4 m short of the mouth
        double vs = std::clamp(spec.v0, 10.0, 14.0);
        int nf = std::max(1, static_cast<int>(std::lround(reach / (vs / kFps))));
        double vs_eff = reach * kFps / nf;
        if (vs_eff <= kFlightFloor || vs_eff >= 15.0)
            throw InfeasibleScript("save contact speed out of range");
        Vec2 contact = b.cur[0] + dir * reach;
        b.cur[12] = contact + dir * kFootOffset;  // keeper right behind the contact point

        b.hold(jitter_frames(rng, kLeadDwell, 10));
        int foot = b.next() - 1;
        b.shots.push_back({foot - 1, shooter});
        b.add_kick(foot - 1, shooter);
        b.fly(dir, std::vector<double>(nf, vs_eff));
        int contact_frame = b.next() - 1;
        b.deflect_frame = contact_frame - 1;  // spike lands one frame before contact

        AtomicEvent d;
        d.type = AtomicType::BallDeflection;
        d.t = b.deflect_frame;
        d.roles[roles::DeflectingPlayer] = 12;
        d.roles[roles::DeflectedObject] = 0;
        b.atoms.push_back(std::move(d));

        // Parry: away from the keeper, back into the field.
        Vec2 w1 = rot(dir, 3.0 * 3.14159265358979 / 4.0);
        Vec2 w2 = rot(dir, -3.0 * 3.14159265358979 / 4.0);
        Vec2 w = w1.x < w2.x ? w1 : w2;
        std::vector<double> bounce(10, 9.0);
        for (double v = 9.0 - 4.5 / kFps; v > 0.3; v -= 4.5 / kFps) bounce.push_back(v);
        b.fly(w, bounce);
        b.hold(kTail);
        return b;
    }

    b.hold(jitter_frames(rng, kLeadDwell, 10));
    int foot = b.next() - 1;
    b.shots.push_back({foot - 1, shooter});
    b.add_kick(foot - 1, shooter);
    double vs = std::clamp(spec.v0, 15.0, 22.0);
    double est_frames = (105.0 - b.cur[0].x) / (vs / kFps);
    double spin = kind == ScenarioKind::ShotOut ? 0.5 / est_frames : 0.0;
    Vec2 d = dir;
    int cross_frame = -1;
    while (b.cur[0].x <= 105.0 + 1.2) {
        if (b.next() - 1 > foot && spin != 0.0) d = rot(d, spin);
        b.cur[0] = b.cur[0] + d * (vs / kFps);
        b.frames.push_back(b.cur);
        if (cross_frame < 0 && b.cur[0].x > 105.0) cross_frame = b.next() - 1;
    }
    if (kind == ScenarioKind::ShotGoal) {
        b.goal_frame = cross_frame;
        b.goal_scorer = shooter;
        AtomicEvent g;
        g.type = AtomicType::Goal;
        g.t = cross_frame;
        g.roles[roles::Scorer] = shooter;
        b.atoms.push_back(std::move(g));
    } else {
        double y = b.frames[cross_frame][0].y;  // near the crossing point
        if (std::abs(y - 34.0) < 3.66 + 0.8)
            throw InfeasibleScript("curved shot still crosses inside the mouth");
        b.out_frame = cross_frame;
        AtomicEvent o;
        o.type = AtomicType::BallOut;
        o.t = cross_frame;
        o.roles[roles::OutObject] = 0;
        b.atoms.push_back(std::move(o));
    }
    b.hold(kTail);
    return b;
}

Build build_dribble(const ScenarioSpec& spec) {
    std::mt19937_64 rng(smix(spec.seed, static_cast<int>(spec.kind), 0xd81b));
    Build b;
    park_defaults(b, false);
    int a = 6;
    Vec2 p{50 + jitter(rng, -1.5, 1.5), 30 + jitter(rng, -1.5, 1.5)};
    Vec2 dir = unit({1.0, 0.35});
    b.actors = {0, a};
    b.cur[a] = p;
    b.cur[0] = p + dir * kFootOffset;
    b.hold(jitter_frames(rng, kLeadDwell, 10));
    int foot = b.next() - 1;
    b.add_kick(foot - 1, a);
    // knock-on that rolls to a stop
    double v0 = std::clamp(spec.v0, 8.0, 14.0);
    std::vector<double> speeds;
    for (double v = v0; v > 0.2; v -= 6.0 / kFps) speeds.push_back(v);
    Vec2 stop = b.cur[0];
    for (double v : speeds) stop = stop + dir * (v / kFps);
    b.fly(dir, speeds);
    // wait 10 frames into the flight already elapsed? chase starts now
    b.move(a, stop - dir * kFootOffset, 5.0);
    b.hold(50);
    return b;
}

Build build_clearance(const ScenarioSpec& spec) {
    std::mt19937_64 rng(smix(spec.seed, static_cast<int>(spec.kind), 0xc1ea));
    Build b;
    park_defaults(b, false);
    int a = 7;
    Vec2 p{60 + jitter(rng, -1.5, 1.5), 20 + jitter(rng, -1.5, 1.5)};
    Vec2 dir = unit({3, -20});
    b.actors = {0, a};
    b.cur[a] = p;
    b.cur[0] = p + dir * kFootOffset;
    b.hold(jitter_frames(rng, kLeadDwell, 10));
    int foot = b.next() - 1;
    b.add_kick(foot - 1, a);
    double vs = std::clamp(spec.v0, 10.0, 20.0);
    int cross_frame = -1;
    while (b.cur[0].y >= -1.2) {
        b.cur[0] = b.cur[0] + dir * (vs / kFps);
        b.frames.push_back(b.cur);
        if (cross_frame < 0 && b.cur[0].y < 0.0) cross_frame = b.next() - 1;
    }
    b.out_frame = cross_frame;
    AtomicEvent o;
    o.type = AtomicType::BallOut;
    o.t = cross_frame;
    o.roles[roles::OutObject] = 0;
    b.atoms.push_back(std::move(o));
    b.hold(kTail);
    return b;
}

Build build_segment(const ScenarioSpec& spec) {
    spec.check();
    switch (spec.kind) {
        case ScenarioKind::Pass: return build_pass(spec, false, false, false);
        case ScenarioKind::Cross: return build_pass(spec, true, false, false);
        case ScenarioKind::FilteringPass: return build_pass(spec, false, true, false);
        case ScenarioKind::PassThenGoal: return build_pass(spec, false, false, true);
        case ScenarioKind::CrossThenGoal: return build_pass(spec, true, false, true);
        case ScenarioKind::FilteringPassThenGoal: return build_pass(spec, false, true, true);
        case ScenarioKind::TackleWon: return build_tackle(spec, true);
        case ScenarioKind::TackleLost: return build_tackle(spec, false);
        case ScenarioKind::ShotGoal:
        case ScenarioKind::ShotOut:
        case ScenarioKind::ShotSaved: return build_shot(spec, spec.kind);
        case ScenarioKind::Dribble: return build_dribble(spec);
        case ScenarioKind::Clearance: return build_clearance(spec);
    }
    throw InfeasibleScript("unknown scenario kind");
}

// Independent possession/tackle oracle: naive batch evaluation of the window
// rules at the reference thresholds, straight off the float trajectories.
std::vector<AtomicEvent> possession_tackle_atoms(const Trace& trace) {
    const int n = trace.size();
    const int k = 5;
    const double t_id = 1.0, t_od = 1.5, t_s = 6.0;
    const auto& roster = trace.roster();

    std::vector<double> speed(n, 0.0);
    for (int t = 0; t + 1 < n; ++t)
        speed[t] = distance(trace.position(t + 1, 0), trace.position(t, 0)) * kFps;
    if (n >= 2) speed[n - 1] = speed[n - 2];

    std::vector<AtomicEvent> out;
    for (int t = 0; t + k < n; ++t) {
        int p = -1;
        double best = 0;
        for (const auto& o : roster) {
            if (o.cls != ObjectClass::Player) continue;
            double d = distance(trace.position(t, o.id), trace.position(t, 0));
            if (p < 0 || d < best || (d == best && o.id < p)) {
                p = o.id;
                best = d;
            }
        }
        if (best >= t_id) continue;
        bool near = true;
        for (int j = 1; j <= k && near; ++j)
            near = distance(trace.position(t + j, p), trace.position(t + j, 0)) < t_id;
        if (!near) continue;
        bool slow = true;
        for (int j = 0; j <= k && slow; ++j) slow = speed[t + j] < t_s;
        if (!slow) continue;
        Team mine = trace.object(p).team;
        bool opp_all = true, opp_none = true;
        for (int j = 0; j <= k; ++j) {
            bool any = false;
            for (const auto& o : roster) {
                if (o.cls != ObjectClass::Player || o.team == mine) continue;
                if (distance(trace.position(t + j, o.id), trace.position(t + j, p)) < t_od)
                    any = true;
            }
            opp_all = opp_all && any;
            opp_none = opp_none && !any;
        }
        if (opp_none) {
            AtomicEvent e;
            e.type = AtomicType::BallPossession;
            e.t = t;
            e.roles[roles::PossessingPlayer] = p;
            e.roles[roles::PossessedObject] = 0;
            out.push_back(std::move(e));
        } else if (opp_all) {
            int tackler = -1;
            double bd = 0;
            for (const auto& o : roster) {
                if (o.cls != ObjectClass::Player || o.team == mine) continue;
                double d = distance(trace.position(t, o.id), trace.position(t, p));
                if (d < t_od && (tackler < 0 || d < bd || (d == bd && o.id < tackler))) {
                    tackler = o.id;
                    bd = d;
                }
            }
            if (tackler < 0) continue;
            AtomicEvent e;
            e.type = AtomicType::Tackle;
            e.t = t;
            e.roles[roles::PossessingPlayer] = p;
            e.roles[roles::TacklingPlayer] = tackler;
            e.roles[roles::PossessedObject] = 0;
            out.push_back(std::move(e));
        }
    }
    return out;
}

IntervalEvent make_interval(ComplexType type, int start, int end, RoleMap roles) {
    IntervalEvent e;
    e.type = type;
    e.start = start;
    e.end = end;
    e.roles = std::move(roles);
    return e;
}

GeneratedScenario assemble(std::vector<std::pair<int, Build>> placed) {
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Trace trace(make_roster(), kFps);
    int frame = 0;
    const std::array<Vec2, kNumObjects>* held = &placed.front().second.frames.front();
    for (const auto& [offset, b] : placed) {
        if (offset < frame) throw OverlappingScenarios();
        while (frame < offset) {
            Frame f;
            f.index = frame++;
            f.positions.assign(held->begin(), held->end());
            trace.append_frame(std::move(f));
        }
        for (const auto& snap : b.frames) {
            Frame f;
            f.index = frame++;
            f.positions.assign(snap.begin(), snap.end());
            trace.append_frame(std::move(f));
        }
        held = &b.frames.back();
    }

    // Parked players must never interfere with the ball.
    for (const auto& [offset, b] : placed) {
        for (int t = 0; t < static_cast<int>(b.frames.size()); ++t) {
            const auto& snap = b.frames[t];
            for (int id = 1; id < kNumObjects; ++id) {
                if (b.actors.count(id)) continue;
                if (distance(snap[id], snap[0]) < kClearance)
                    throw InfeasibleScript("parked player near the ball");
            }
        }
    }

    auto pt = possession_tackle_atoms(trace);

    EventLog truth;
    truth.atomic = pt;
    for (const auto& [offset, b] : placed)
        for (AtomicEvent e : b.atoms) {
            e.t += offset;
            truth.atomic.push_back(std::move(e));
        }
    for (size_t i = 0; i < truth.atomic.size(); ++i)
        truth.atomic[i].id = static_cast<std::int64_t>(i) + 1;

    // Kick aim checks: passes must miss the mouth, shots must be on target.
    for (const auto& [offset, b] : placed) {
        for (const auto& e : b.atoms) {
            if (e.type != AtomicType::KickingTheBall) continue;
            AtomicEvent global = e;
            global.t = e.t + offset;
            bool is_shot = false;
            for (const auto& s : b.shots) is_shot = is_shot || s.kf == e.t;
            if (is_shot != kick_on_target(trace, global))
                throw InfeasibleScript(is_shot ? "shot misses the mouth"
                                               : "pass aimed at the mouth");
        }
    }

    std::vector<IntervalEvent> merged;
    {
        std::vector<AtomicEvent> ids = pt;
        for (size_t i = 0; i < ids.size(); ++i) ids[i].id = static_cast<std::int64_t>(i) + 1;
        merged = merge_possession(ids);
    }
    truth.complex = merged;

    auto first_possession_at_or_after = [&](int t0, int limit) -> const AtomicEvent* {
        const AtomicEvent* best = nullptr;
        for (const auto& e : pt) {
            if (e.type != AtomicType::BallPossession || e.t < t0 || e.t > limit) continue;
            if (!best || e.t < best->t) best = &e;
        }
        return best;
    };

    for (const auto& [offset, b] : placed) {
        int seg_end = offset + static_cast<int>(b.frames.size()) - 1;
        int goal = b.goal_frame >= 0 ? b.goal_frame + offset : -1;

        for (const auto& pi : b.passes) {
            int kf = pi.kf + offset;
            const AtomicEvent* cap = first_possession_at_or_after(kf, seg_end);
            if (!cap || cap->roles.at(roles::PossessingPlayer) != pi.receiver ||
                cap->t - kf > kPassHorizon)
                throw InfeasibleScript("pass reception not clean");
            RoleMap r{{roles::KickingPlayer, pi.kicker}, {roles::ReceivingPlayer, pi.receiver}};
            truth.complex.push_back(make_interval(ComplexType::Pass, kf, cap->t, r));
            if (pi.cross) truth.complex.push_back(make_interval(ComplexType::Cross, kf, cap->t, r));
            if (pi.filtering) {
                if (!ahead_of_defence(trace, kf, pi.receiver))
                    throw InfeasibleScript("receiver not past the defence");
                truth.complex.push_back(
                    make_interval(ComplexType::FilteringPass, kf, cap->t, r));
            }
            if (goal >= 0 && b.goal_scorer == pi.receiver) {
                if (goal - cap->t > kChainHorizon)
                    throw InfeasibleScript("goal too long after the reception");
                RoleMap rg = r;
                rg[roles::Scorer] = b.goal_scorer;
                truth.complex.push_back(make_interval(ComplexType::PassThenGoal, kf, goal, rg));
                if (pi.cross)
                    truth.complex.push_back(
                        make_interval(ComplexType::CrossThenGoal, kf, goal, rg));
                if (pi.filtering)
                    truth.complex.push_back(
                        make_interval(ComplexType::FilteringPassThenGoal, kf, goal, rg));
            }
        }

        for (const auto& si : b.shots) {
            int sf = si.kf + offset;
            RoleMap r{{roles::Shooter, si.shooter}};
            truth.complex.push_back(make_interval(ComplexType::Shot, sf, sf, r));
            if (goal >= 0 && b.goal_scorer == si.shooter) {
                RoleMap rg = r;
                rg[roles::Scorer] = si.shooter;
                truth.complex.push_back(make_interval(ComplexType::ShotThenGoal, sf, goal, rg));
            }
            if (b.out_frame >= 0)
                truth.complex.push_back(
                    make_interval(ComplexType::ShotOut, sf, b.out_frame + offset, r));
            if (b.deflect_frame >= 0) {
                RoleMap rs = r;
                rs[roles::GoalKeeper] = 12;
                truth.complex.push_back(
                    make_interval(ComplexType::SavedShot, sf, b.deflect_frame + offset, rs));
            }
        }

        if (b.tackle_winner) {
            const IntervalEvent* run = nullptr;
            for (const auto& m : merged)
                if (m.type == ComplexType::Tackle && m.start >= offset && m.start <= seg_end) {
                    if (run) throw InfeasibleScript("tackle split into several contests");
                    run = &m;
                }
            if (!run) throw InfeasibleScript("tackle contest not detectable");
            const AtomicEvent* after = first_possession_at_or_after(run->end, seg_end);
            if (!after || after->roles.at(roles::PossessingPlayer) != *b.tackle_winner ||
                after->t - run->end > kChainHorizon)
                throw InfeasibleScript("tackle outcome not clean");
            bool won = *b.tackle_winner == run->roles.at(roles::TacklingPlayer);
            RoleMap r{{roles::TacklingPlayer, run->roles.at(roles::TacklingPlayer)},
                      {roles::PossessingPlayer, run->roles.at(roles::PossessingPlayer)}};
            truth.complex.push_back(make_interval(
                won ? ComplexType::WonTackle : ComplexType::LostTackle, run->start, after->t, r));
        }
    }

    truth.sort_and_renumber();
    GeneratedScenario out{std::move(trace), std::move(truth)};
    return out;
}

}  // namespace

std::string scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Pass: return "Pass";
        case ScenarioKind::Cross: return "Cross";
        case ScenarioKind::FilteringPass: return "FilteringPass";
        case ScenarioKind::PassThenGoal: return "PassThenGoal";
        case ScenarioKind::CrossThenGoal: return "CrossThenGoal";
        case ScenarioKind::FilteringPassThenGoal: return "FilteringPassThenGoal";
        case ScenarioKind::TackleWon: return "TackleWon";
        case ScenarioKind::TackleLost: return "TackleLost";
        case ScenarioKind::ShotGoal: return "ShotGoal";
        case ScenarioKind::ShotOut: return "ShotOut";
        case ScenarioKind::ShotSaved: return "ShotSaved";
        case ScenarioKind::Dribble: return "Dribble";
        case ScenarioKind::Clearance: return "Clearance";
    }
    return "?";
}

std::optional<ScenarioKind> scenario_kind_from_name(const std::string& s) {
    for (auto k : all_scenario_kinds())
        if (scenario_kind_name(k) == s) return k;
    return std::nullopt;
}

const std::vector<ScenarioKind>& all_scenario_kinds() {
    static const std::vector<ScenarioKind> kinds = {
        ScenarioKind::Pass,          ScenarioKind::Cross,
        ScenarioKind::FilteringPass, ScenarioKind::PassThenGoal,
        ScenarioKind::CrossThenGoal, ScenarioKind::FilteringPassThenGoal,
        ScenarioKind::TackleWon,     ScenarioKind::TackleLost,
        ScenarioKind::ShotGoal,      ScenarioKind::ShotOut,
        ScenarioKind::ShotSaved,     ScenarioKind::Dribble,
        ScenarioKind::Clearance};
    return kinds;
}

void ScenarioSpec::check() const {
    if (v0 < 6.0 || v0 > 30.0) throw InfeasibleScript("kick speed out of [6, 30]");
    if (mu < 1.0 || mu > 6.0) throw InfeasibleScript("deceleration out of [1, 6]");
}

void NoiseSpec::check() const {
    if (sigma < 0.0 || sigma > 2.0) throw InfeasibleScript("noise sigma out of [0, 2]");
    if (dropout < 0.0 || dropout > 0.05) throw InfeasibleScript("dropout above 5%");
}

GeneratedScenario generate_scenario(const ScenarioSpec& spec) {
    std::vector<std::pair<int, Build>> placed;
    placed.emplace_back(0, build_segment(spec));
    return assemble(std::move(placed));
}

GeneratedScenario generate_match(const std::vector<ScenarioSlot>& script) {
    if (script.empty()) return GeneratedScenario{Trace(make_roster(), kFps), {}};
    std::vector<std::pair<int, Build>> placed;
    for (const auto& slot : script) placed.emplace_back(slot.offset_frames, build_segment(slot.spec));
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int end = -1;
    for (const auto& [offset, b] : placed) {
        if (offset <= end) throw OverlappingScenarios();
        if (end >= 0 && offset - end - 1 <= kChainHorizon)
            throw InfeasibleScript("scenarios closer than the composition horizon");
        end = offset + static_cast<int>(b.frames.size()) - 1;
    }
    return assemble(std::move(placed));
}

Trace add_noise(const Trace& trace, const NoiseSpec& noise, std::uint64_t seed) {
    noise.check();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise.sigma > 0 ? noise.sigma : 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    int n = trace.size();
    int m = static_cast<int>(trace.roster().size());
    std::vector<std::vector<Vec2>> pos(n, std::vector<Vec2>(m));
    std::vector<std::vector<bool>> kept(n, std::vector<bool>(m, true));
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < m; ++s) {
            Vec2 p = trace.frame(t).positions[s];
            if (noise.sigma > 0) p = p + Vec2{g(rng), g(rng)};
            pos[t][s] = p;
            if (noise.dropout > 0 && u(rng) < noise.dropout) kept[t][s] = false;
        }
    // Fill dropped rows by linear interpolation between retained samples.
    for (int s = 0; s < m; ++s) {
        int prev = -1;
        for (int t = 0; t <= n; ++t) {
            if (t < n && kept[t][s]) {
                if (prev >= 0 && t - prev > 1) {
                    for (int q = prev + 1; q < t; ++q) {
                        double a = static_cast<double>(q - prev) / (t - prev);
                        pos[q][s] = pos[prev][s] * (1.0 - a) + pos[t][s] * a;
                    }
                } else if (prev < 0) {
                    for (int q = 0; q < t; ++q) pos[q][s] = pos[t][s];
                }
                prev = t;
            } else if (t == n && prev >= 0) {
                for (int q = prev + 1; q < n; ++q) pos[q][s] = pos[prev][s];
            }
        }
        if (prev < 0)  // everything dropped: keep the original track
            for (int t = 0; t < n; ++t) pos[t][s] = trace.frame(t).positions[s];
    }
    Trace out(trace.roster(), trace.fps(), trace.geometry());
    for (int t = 0; t < n; ++t) {
        Frame f;
        f.index = t;
        f.positions = pos[t];
        out.append_frame(std::move(f));
    }
    return out;
}

MatchScript script_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad script JSON: ") + e.what());
    }
    MatchScript script;
    for (const auto& s : j.at("scenarios")) {
        ScenarioSlot slot;
        auto kind = scenario_kind_from_name(s.at("kind").get<std::string>());
        if (!kind) throw DataError("unknown scenario kind");
        slot.spec.kind = *kind;
        if (s.contains("v0")) slot.spec.v0 = s["v0"].get<double>();
        if (s.contains("mu")) slot.spec.mu = s["mu"].get<double>();
        if (s.contains("seed")) slot.spec.seed = s["seed"].get<std::uint64_t>();
        if (s.contains("offset")) slot.offset_frames = s["offset"].get<int>();
        script.slots.push_back(slot);
    }
    if (j.contains("noise")) {
        NoiseSpec ns;
        const auto& nj = j["noise"];
        if (nj.contains("sigma")) ns.sigma = nj["sigma"].get<double>();
        if (nj.contains("dropout")) ns.dropout = nj["dropout"].get<double>();
        if (nj.contains("seed")) script.noise_seed = nj["seed"].get<std::uint64_t>();
        script.noise = ns;
    }
    return script;
}

std::string script_to_json(const MatchScript& script) {
    nlohmann::json j;
    j["scenarios"] = nlohmann::json::array();
    for (const auto& slot : script.slots) {
        j["scenarios"].push_back({{"kind", scenario_kind_name(slot.spec.kind)},
                                  {"v0", slot.spec.v0},
                                  {"mu", slot.spec.mu},
                                  {"seed", slot.spec.seed},
                                  {"offset", slot.offset_frames}});
    }
    if (script.noise) {
        j["noise"] = {{"sigma", script.noise->sigma},
                      {"dropout", script.noise->dropout},
                      {"seed", script.noise_seed}};
    }
    return j.dump(2);
}

MatchScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return script_from_json(ss.str());
}

std::vector<ScenarioSpec> standard_suite(int count, std::uint64_t seed) {
    std::vector<ScenarioSpec> out;
    const auto& kinds = all_scenario_kinds();
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(smix(seed, static_cast<std::uint64_t>(i), 0x51e7));
        ScenarioSpec spec;
        spec.kind = kinds[i % kinds.size()];
        spec.v0 = 8.0 + (rng() % 1800) / 100.0;  // [8, 26)
        spec.mu = 1.0 + (rng() % 500) / 100.0;   // [1, 6)
        spec.seed = smix(seed, static_cast<std::uint64_t>(i), 0xfeed);
        out.push_back(spec);
    }
    return out;
}

}  // namespace socev
