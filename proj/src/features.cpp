#include "socev/features.hpp"

#include <algorithm>
#include <cmath>

namespace socev {

std::vector<Vec2> smoothed_positions(const Trace& trace, int object_id, int smoothing_width) {
    int n = trace.size();
    int slot;
    try {
        slot = trace.slot_of(object_id);
    } catch (const std::exception&) {
        throw UnknownObject(object_id);
    }
    std::vector<Vec2> out(n);
    if (smoothing_width <= 1) {
        for (int i = 0; i < n; ++i) out[i] = trace.frame(i).positions[slot];
        return out;
    }
    int radius = smoothing_width / 2;
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - radius);
        int hi = std::min(n - 1, i + radius);
        Vec2 sum{};
        for (int j = lo; j <= hi; ++j) sum = sum + trace.frame(j).positions[slot];
        out[i] = sum * (1.0 / (hi - lo + 1));
    }
    return out;
}

KinematicSeries kinematics(const Trace& trace, int object_id, int smoothing_width) {
    auto pos = smoothed_positions(trace, object_id, smoothing_width);
    int n = static_cast<int>(pos.size());
    KinematicSeries k;
    k.velocity.resize(n);
    k.speed.resize(n);
    k.acceleration.resize(n);
    k.direction.resize(n);
    double fps = trace.fps();
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) {
            k.velocity[i] = (pos[i + 1] - pos[i]) * fps;
        } else {
            k.velocity[i] = n > 1 ? k.velocity[i - 1] : Vec2{};
        }
        k.speed[i] = k.velocity[i].norm();
        k.direction[i] = k.speed[i] > 0 ? std::atan2(k.velocity[i].y, k.velocity[i].x) : 0.0;
    }
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) {
            k.acceleration[i] = (k.speed[i + 1] - k.speed[i]) * fps;
        } else {
            k.acceleration[i] = n > 1 ? k.acceleration[i - 1] : 0.0;
        }
    }
    return k;
}

double object_distance(const Trace& trace, int a, int b, int frame) {
    try {
        return distance(trace.position(frame, a), trace.position(frame, b));
    } catch (const std::invalid_argument&) {
        throw UnknownObject(-1);
    }
}

double target_line_x(const FieldGeometry& geom, Team attacking_team) {
    return attacking_team == Team::Home ? geom.length_m : 0.0;
}

std::optional<double> ray_cross_y(Vec2 pos, Vec2 vel, double line_x) {
    double dx = line_x - pos.x;
    if (vel.x == 0.0) return std::nullopt;
    double t = dx / vel.x;
    if (t <= 0.0) return std::nullopt;
    return pos.y + vel.y * t;
}

TargetLineFeatures target_line_features(const Trace& trace, int object_id, int frame,
                                        Team attacking_team) {
    double line_x = target_line_x(trace.geometry(), attacking_team);
    Vec2 p = trace.position(frame, object_id);
    TargetLineFeatures f;
    f.distance_to_target_line = std::abs(p.x - line_x);

    Vec2 vel{};
    if (frame + 1 < trace.size()) {
        vel = (trace.position(frame + 1, object_id) - p) * trace.fps();
    } else if (frame > 0) {
        vel = (p - trace.position(frame - 1, object_id)) * trace.fps();
    }
    f.expected_cross_y = ray_cross_y(p, vel, line_x);
    return f;
}

double change_of_direction(const Trace& trace, int object_id, int frame, int window) {
    if (window < 1 || frame < 0 || frame + window >= trace.size()) throw WindowOutOfRange();
    auto k = kinematics(trace, object_id);
    Vec2 v1 = k.velocity[frame];
    Vec2 v2 = k.velocity[frame + window];
    double n1 = v1.norm(), n2 = v2.norm();
    if (n1 == 0.0 || n2 == 0.0) return 0.0;
    double c = std::clamp(v1.dot(v2) / (n1 * n2), -1.0, 1.0);
    return std::acos(c);
}

std::pair<int, double> nearest_to_ball(const Trace& trace, int frame) {
    Vec2 ball = trace.position(frame, trace.ball_id());
    int best = -1;
    double best_d = 0.0;
    for (const auto& o : trace.roster()) {
        if (o.cls != ObjectClass::Player) continue;
        double d = distance(trace.position(frame, o.id), ball);
        if (best < 0 || d < best_d || (d == best_d && o.id < best)) {
            best = o.id;
            best_d = d;
        }
    }
    return {best, best_d};
}

bool is_moving(const KinematicSeries& k, int frame) {
    return k.speed.at(frame) > kMovingSpeedThreshold;
}

}  // namespace socev
