#include "socev/atomic.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "socev/io.hpp"

namespace socev {

std::string param_rule_name(ParamRule r) {
    switch (r) {
        case ParamRule::KickingTheBall: return "KickingTheBall";
        case ParamRule::BallPossession: return "BallPossession";
        case ParamRule::Tackle: return "Tackle";
        case ParamRule::BallDeflection: return "BallDeflection";
    }
    return "?";
}

std::optional<ParamRule> param_rule_from_name(const std::string& s) {
    for (auto r : {ParamRule::KickingTheBall, ParamRule::BallPossession, ParamRule::Tackle,
                   ParamRule::BallDeflection})
        if (param_rule_name(r) == s) return r;
    return std::nullopt;
}

int RuleParameterSet::max_window() const {
    int m = 0;
    for (const auto& r : rules) m = std::max(m, r.window);
    return m;
}

std::string RuleParameterSet::to_json() const {
    nlohmann::json j;
    for (int i = 0; i < 4; ++i) {
        const auto& r = rules[i];
        nlohmann::json rj;
        rj["inner_dist"] = r.inner_dist;
        rj["outer_dist"] = r.outer_dist;
        rj["speed"] = r.speed;
        rj["accel"] = r.accel;
        rj["window"] = r.window;
        j["rules"][param_rule_name(static_cast<ParamRule>(i))] = rj;
    }
    j["evaluation_order"] = nlohmann::json::array();
    for (auto r : evaluation_order) j["evaluation_order"].push_back(param_rule_name(r));
    return j.dump(2);
}

RuleParameterSet RuleParameterSet::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad parameter JSON: ") + e.what());
    }
    RuleParameterSet p;
    if (j.contains("rules")) {
        for (auto& [name, rj] : j["rules"].items()) {
            auto rule = param_rule_from_name(name);
            if (!rule) throw DataError("unknown rule '" + name + "' in parameter file");
            auto& r = p.of(*rule);
            if (rj.contains("inner_dist")) r.inner_dist = rj["inner_dist"].get<double>();
            if (rj.contains("outer_dist")) r.outer_dist = rj["outer_dist"].get<double>();
            if (rj.contains("speed")) r.speed = rj["speed"].get<double>();
            if (rj.contains("accel")) r.accel = rj["accel"].get<double>();
            if (rj.contains("window")) r.window = rj["window"].get<int>();
        }
    }
    if (j.contains("evaluation_order")) {
        auto arr = j["evaluation_order"];
        if (arr.size() != 4) throw DataError("evaluation_order must list the four rules");
        std::array<bool, 4> seen{};
        for (int i = 0; i < 4; ++i) {
            auto rule = param_rule_from_name(arr[i].get<std::string>());
            if (!rule) throw DataError("unknown rule in evaluation_order");
            p.evaluation_order[i] = *rule;
            seen[static_cast<int>(*rule)] = true;
        }
        if (!(seen[0] && seen[1] && seen[2] && seen[3]))
            throw DataError("evaluation_order is not a permutation");
    }
    return p;
}

RuleParameterSet RuleParameterSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void RuleParameterSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << to_json() << '\n';
}

RuleParameterSet reference_parameters() {
    RuleParameterSet p;
    for (auto& r : p.rules) {
        r.inner_dist = 1.0;
        r.outer_dist = 1.5;
        r.speed = 6.0;
        r.accel = 10.0;
        r.window = 5;
    }
    return p;
}

StreamingAtomicDetector::StreamingAtomicDetector(std::vector<ObjectInfo> roster, double fps,
                                                 FieldGeometry geom, RuleParameterSet params,
                                                 DetectOptions opts)
    : roster_(std::move(roster)), fps_(fps), geom_(geom), params_(params), opts_(opts) {
    for (int i = 0; i < static_cast<int>(roster_.size()); ++i) {
        if (roster_[i].cls == ObjectClass::Ball) ball_slot_ = i;
    }
    if (ball_slot_ < 0) throw std::invalid_argument("roster has no ball");
}

const std::vector<Vec2>& StreamingAtomicDetector::positions_at(int t) const {
    return buf_.at(t - first_buffered_).smooth;
}

Vec2 StreamingAtomicDetector::ball_pos(int t) const { return positions_at(t)[ball_slot_]; }

double StreamingAtomicDetector::ball_speed(int t) const {
    return speeds_.at(t - first_buffered_);
}

double StreamingAtomicDetector::ball_accel(int t) const {
    // acceleration(t) = (speed(t+1) - speed(t)) * fps, last frame replicated
    int last = next_frame_ - 1;
    if (finished_ && t >= last) t = last - 1;
    return (ball_speed(t + 1) - ball_speed(t)) * fps_;
}

double StreamingAtomicDetector::dist_to_ball(int slot, int t) const {
    const auto& p = positions_at(t);
    return distance(p[slot], p[ball_slot_]);
}

std::pair<int, double> StreamingAtomicDetector::nearest_player_slot(int t) const {
    int best = -1;
    double best_d = 0.0;
    for (int s = 0; s < static_cast<int>(roster_.size()); ++s) {
        if (roster_[s].cls != ObjectClass::Player) continue;
        double d = dist_to_ball(s, t);
        if (best < 0 || d < best_d ||
            (d == best_d && roster_[s].id < roster_[best].id)) {
            best = s;
            best_d = d;
        }
    }
    return {best, best_d};
}

void StreamingAtomicDetector::push(const Frame& frame) {
    if (finished_) throw std::logic_error("push after finish");
    if (frame.index != next_frame_)
        throw std::invalid_argument("frames must be pushed contiguously");
    if (frame.positions.size() != roster_.size())
        throw std::invalid_argument("frame roster size mismatch");
    Buffered b;
    b.index = frame.index;
    b.raw = frame.positions;
    buf_.push_back(std::move(b));
    ++next_frame_;
    advance();
}

void StreamingAtomicDetector::finish() {
    if (finished_) return;
    finished_ = true;
    advance();
}

void StreamingAtomicDetector::advance() {
    int newest = next_frame_ - 1;
    if (newest < 0) return;
    int radius = opts_.smoothing_width > 1 ? opts_.smoothing_width / 2 : 0;

    // Smooth positions once the trailing half-window is present.
    for (auto& b : buf_) {
        if (b.smooth_ready) continue;
        if (!finished_ && b.index + radius > newest) break;
        if (radius == 0) {
            b.smooth = b.raw;
        } else {
            int lo = std::max(0, b.index - radius);
            int hi = std::min(newest, b.index + radius);
            b.smooth.assign(roster_.size(), Vec2{});
            for (int f = lo; f <= hi; ++f) {
                const auto& raw = buf_.at(f - first_buffered_).raw;
                for (size_t s = 0; s < raw.size(); ++s) b.smooth[s] = b.smooth[s] + raw[s];
            }
            double inv = 1.0 / (hi - lo + 1);
            for (auto& p : b.smooth) p = p * inv;
        }
        b.smooth_ready = true;
    }

    // Ball speed per frame; the last frame replicates the previous value.
    while (static_cast<int>(speeds_.size()) + first_buffered_ <= newest) {
        int t = first_buffered_ + static_cast<int>(speeds_.size());
        const auto& cur = buf_.at(t - first_buffered_);
        if (t + 1 <= newest) {
            const auto& nxt = buf_.at(t + 1 - first_buffered_);
            if (!cur.smooth_ready || !nxt.smooth_ready) break;
            speeds_.push_back(distance(nxt.smooth[ball_slot_], cur.smooth[ball_slot_]) * fps_);
        } else if (finished_) {
            speeds_.push_back(speeds_.empty() ? 0.0 : speeds_.back());
        } else {
            break;
        }
    }

    int max_w = params_.max_window();
    while (true) {
        int t = next_eval_;
        if (t > newest) break;
        bool ready;
        if (finished_) {
            ready = static_cast<int>(speeds_.size()) + first_buffered_ > newest;
        } else {
            // Need positions through t + max_w + 1 and accel through t + max_w
            // (i.e. speed through t + max_w + 1).
            ready = first_buffered_ + static_cast<int>(speeds_.size()) > t + max_w + 1;
        }
        if (!ready) break;
        evaluate_frame(t);
        ++next_eval_;
    }

    // Drop frames no longer needed by evaluation or smoothing.
    int keep_from = std::min(next_eval_ - 1, newest - 2 * radius - 1);
    while (first_buffered_ < keep_from && !buf_.empty()) {
        buf_.pop_front();
        if (!speeds_.empty()) speeds_.pop_front();
        ++first_buffered_;
    }
}

void StreamingAtomicDetector::evaluate_frame(int t) {
    boundary_rules(t);

    int last = next_frame_ - 1;
    auto fits = [&](int needed_last) { return needed_last <= last; };

    bool anchor_taken = false;  // BallPossession / Tackle suppression
    for (ParamRule rule : params_.evaluation_order) {
        std::optional<AtomicEvent> ev;
        switch (rule) {
            case ParamRule::KickingTheBall:
                if (fits(t + params_.of(rule).window + 1)) ev = rule_kicking(t);
                break;
            case ParamRule::BallPossession:
                if (!anchor_taken && fits(t + params_.of(rule).window)) ev = rule_possession(t);
                if (ev) anchor_taken = true;
                break;
            case ParamRule::Tackle:
                if (!anchor_taken && fits(t + params_.of(rule).window)) ev = rule_tackle(t);
                if (ev) anchor_taken = true;
                break;
            case ParamRule::BallDeflection:
                if (fits(t + params_.of(rule).window + 1)) ev = rule_deflection(t);
                break;
        }
        if (ev) {
            if (ev->type == AtomicType::KickingTheBall) {
                Team team = roster_[0].team;  // overwritten below
                for (const auto& o : roster_)
                    if (o.id == ev->roles[roles::KickingPlayer]) team = o.team;
                if (team != Team::None)
                    last_kick_[team == Team::Home ? 0 : 1] = {t, ev->roles[roles::KickingPlayer]};
            }
            emit(std::move(*ev));
        }
    }
}

std::optional<AtomicEvent> StreamingAtomicDetector::rule_kicking(int t) {
    const auto& th = params_.of(ParamRule::KickingTheBall);
    int n = th.window;
    auto [p, d0] = nearest_player_slot(t);
    if (d0 >= th.inner_dist) return std::nullopt;
    for (int k = 1; k <= n; ++k) {
        if (!(dist_to_ball(p, t + k) < dist_to_ball(p, t + k + 1))) return std::nullopt;
    }
    if (!(ball_speed(t + n) > th.speed)) return std::nullopt;
    bool spike = false;
    for (int k = 0; k <= n && !spike; ++k) spike = ball_accel(t + k) > th.accel;
    if (!spike) return std::nullopt;
    // Refractory: a contiguous run of qualifying frames is one kick, reported
    // at its first frame. Under measurement noise the clauses often stay true
    // for several frames around a real contact.
    bool contiguous = (t == last_kick_qualify_ + 1);
    last_kick_qualify_ = t;
    if (contiguous) return std::nullopt;
    AtomicEvent ev;
    ev.type = AtomicType::KickingTheBall;
    ev.t = t;
    ev.roles[roles::KickingPlayer] = roster_[p].id;
    ev.roles[roles::KickedObject] = roster_[ball_slot_].id;
    return ev;
}

std::optional<AtomicEvent> StreamingAtomicDetector::rule_possession(int t) {
    const auto& th = params_.of(ParamRule::BallPossession);
    int n = th.window;
    auto [p, d0] = nearest_player_slot(t);
    if (d0 >= th.inner_dist) return std::nullopt;
    for (int k = 1; k <= n; ++k) {
        if (!(dist_to_ball(p, t + k) < th.inner_dist)) return std::nullopt;
    }
    Team mine = roster_[p].team;
    for (int k = 0; k <= n; ++k) {
        if (!(ball_speed(t + k) < th.speed)) return std::nullopt;
        const auto& pos = positions_at(t + k);
        for (int s = 0; s < static_cast<int>(roster_.size()); ++s) {
            if (roster_[s].cls != ObjectClass::Player || roster_[s].team == mine) continue;
            if (distance(pos[s], pos[p]) < th.outer_dist) return std::nullopt;
        }
    }
    if (opts_.require_moving) {
        // player status conjunct, off by default
        Vec2 cur = positions_at(t)[p];
        Vec2 nxt = positions_at(std::min(t + 1, next_frame_ - 1))[p];
        if (distance(nxt, cur) * fps_ <= kMovingSpeedThreshold) return std::nullopt;
    }
    AtomicEvent ev;
    ev.type = AtomicType::BallPossession;
    ev.t = t;
    ev.roles[roles::PossessingPlayer] = roster_[p].id;
    ev.roles[roles::PossessedObject] = roster_[ball_slot_].id;
    return ev;
}

std::optional<AtomicEvent> StreamingAtomicDetector::rule_tackle(int t) {
    const auto& th = params_.of(ParamRule::Tackle);
    int n = th.window;
    auto [p, d0] = nearest_player_slot(t);
    if (d0 >= th.inner_dist) return std::nullopt;
    for (int k = 1; k <= n; ++k) {
        if (!(dist_to_ball(p, t + k) < th.inner_dist)) return std::nullopt;
    }
    Team mine = roster_[p].team;
    for (int k = 0; k <= n; ++k) {
        if (!(ball_speed(t + k) < th.speed)) return std::nullopt;
        const auto& pos = positions_at(t + k);
        bool opponent_near = false;
        for (int s = 0; s < static_cast<int>(roster_.size()) && !opponent_near; ++s) {
            if (roster_[s].cls != ObjectClass::Player || roster_[s].team == mine) continue;
            opponent_near = distance(pos[s], pos[p]) < th.outer_dist;
        }
        if (!opponent_near) return std::nullopt;
    }
    // tackler: nearest opponent at t, ties to the lowest id
    const auto& pos = positions_at(t);
    int tackler = -1;
    double best = 0.0;
    for (int s = 0; s < static_cast<int>(roster_.size()); ++s) {
        if (roster_[s].cls != ObjectClass::Player || roster_[s].team == mine) continue;
        double d = distance(pos[s], pos[p]);
        if (d < th.outer_dist &&
            (tackler < 0 || d < best || (d == best && roster_[s].id < roster_[tackler].id))) {
            tackler = s;
            best = d;
        }
    }
    if (tackler < 0) return std::nullopt;
    AtomicEvent ev;
    ev.type = AtomicType::Tackle;
    ev.t = t;
    ev.roles[roles::PossessingPlayer] = roster_[p].id;
    ev.roles[roles::TacklingPlayer] = roster_[tackler].id;
    ev.roles[roles::PossessedObject] = roster_[ball_slot_].id;
    return ev;
}

std::optional<AtomicEvent> StreamingAtomicDetector::rule_deflection(int t) {
    const auto& th = params_.of(ParamRule::BallDeflection);
    int n = th.window;
    auto [p, d0] = nearest_player_slot(t);
    if (d0 >= th.inner_dist) return std::nullopt;
    for (int k = 1; k <= n; ++k) {
        if (!(dist_to_ball(p, t + k) < dist_to_ball(p, t + k + 1))) return std::nullopt;
    }
    if (!(ball_speed(t + n) > th.speed)) return std::nullopt;
    bool drop = false;
    for (int k = 0; k <= n && !drop; ++k) drop = ball_accel(t + k) < -th.accel;
    if (!drop) return std::nullopt;
    // Same contiguous-run refractory as the kick rule.
    bool contiguous = (t == last_deflect_qualify_ + 1);
    last_deflect_qualify_ = t;
    if (contiguous) return std::nullopt;
    AtomicEvent ev;
    ev.type = AtomicType::BallDeflection;
    ev.t = t;
    ev.roles[roles::DeflectingPlayer] = roster_[p].id;
    ev.roles[roles::DeflectedObject] = roster_[ball_slot_].id;
    return ev;
}

void StreamingAtomicDetector::boundary_rules(int t) {
    if (t < 1) {
        ball_was_inside_ = geom_.inside_pitch(buf_.at(t - first_buffered_).raw[ball_slot_]);
        return;
    }
    // Line-crossing geometry uses raw positions.
    Vec2 prev = buf_.at(t - 1 - first_buffered_).raw[ball_slot_];
    Vec2 cur = buf_.at(t - first_buffered_).raw[ball_slot_];
    bool inside = geom_.inside_pitch(cur);
    if (ball_was_inside_ && !inside) {
        // First boundary crossed along the segment prev -> cur.
        double best_u = std::numeric_limits<double>::infinity();
        bool goal_line = false;
        double cross_y = 0.0;
        bool right = false;
        auto consider_x = [&](double line_x, bool is_right) {
            double dx = cur.x - prev.x;
            if (dx == 0.0) return;
            double u = (line_x - prev.x) / dx;
            if (u < 0.0 || u > 1.0) return;
            if (u < best_u) {
                best_u = u;
                goal_line = true;
                right = is_right;
                cross_y = prev.y + u * (cur.y - prev.y);
            }
        };
        auto consider_y = [&](double line_y) {
            double dy = cur.y - prev.y;
            if (dy == 0.0) return;
            double u = (line_y - prev.y) / dy;
            if (u < 0.0 || u > 1.0) return;
            if (u < best_u) {
                best_u = u;
                goal_line = false;
            }
        };
        if (cur.x > geom_.length_m) consider_x(geom_.length_m, true);
        if (cur.x < 0.0) consider_x(0.0, false);
        if (cur.y > geom_.width_m) consider_y(geom_.width_m);
        if (cur.y < 0.0) consider_y(0.0);

        AtomicEvent ev;
        ev.t = t;
        if (goal_line && geom_.in_mouth(cross_y)) {
            ev.type = AtomicType::Goal;
            // Home attacks the right goal.
            int side = right ? 0 : 1;
            if (last_kick_[side] && t - last_kick_[side]->first <= opts_.scorer_lookback)
                ev.roles[roles::Scorer] = last_kick_[side]->second;
        } else {
            ev.type = AtomicType::BallOut;
            ev.roles[roles::OutObject] = roster_[ball_slot_].id;
        }
        emit(std::move(ev));
    }
    ball_was_inside_ = inside;
}

void StreamingAtomicDetector::emit(AtomicEvent ev) {
    ev.id = next_id_++;
    if (frame_cb_) {
        int last = next_frame_ - 1;
        for (int f = ev.t; f <= std::min(ev.t + 2, last); ++f)
            frame_cb_(f, buf_.at(f - first_buffered_).raw);
    }
    events_.push_back(std::move(ev));
}

std::vector<AtomicEvent> detect_atomic(const Trace& trace, const RuleParameterSet& params,
                                       const DetectOptions& opts) {
    StreamingAtomicDetector det(trace.roster(), trace.fps(), trace.geometry(), params, opts);
    for (int f = 0; f < trace.size(); ++f) det.push(trace.frame(f));
    det.finish();
    return det.take_events();
}

}  // namespace socev
