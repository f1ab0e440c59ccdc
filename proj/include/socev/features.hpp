#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "socev/trace.hpp"

namespace socev {

// Velocity threshold for the moving(object) predicate; the source material
// never quantifies it.
inline constexpr double kMovingSpeedThreshold = 0.5;  // m/s

/// Forward-difference kinematics of one object. The last frame replicates
/// the previous value so every series has trace length.
struct KinematicSeries {
    std::vector<Vec2> velocity;       // m/s
    std::vector<double> speed;        // m/s
    std::vector<double> acceleration; // m/s^2, d(speed)/dt
    std::vector<double> direction;    // radians vs +x axis; 0 when speed == 0
};

struct UnknownObject : std::invalid_argument {
    explicit UnknownObject(int id)
        : std::invalid_argument("unknown object id " + std::to_string(id)) {}
};

struct WindowOutOfRange : std::out_of_range {
    WindowOutOfRange() : std::out_of_range("window exceeds trace range") {}
};

/// smoothing_width > 1 applies a centered moving average to positions first
/// (width clamped at the trace edges). Width 0/1 means no smoothing.
KinematicSeries kinematics(const Trace& trace, int object_id, int smoothing_width = 0);

std::vector<Vec2> smoothed_positions(const Trace& trace, int object_id, int smoothing_width);

double object_distance(const Trace& trace, int a, int b, int frame);

struct TargetLineFeatures {
    double distance_to_target_line = 0.0;
    std::optional<double> expected_cross_y;  // none when moving away/parallel
};

/// attacking_team selects the target goal line: Home attacks x = length,
/// Away attacks x = 0.
TargetLineFeatures target_line_features(const Trace& trace, int object_id, int frame,
                                        Team attacking_team);

double target_line_x(const FieldGeometry& geom, Team attacking_team);

/// Expected crossing y of a velocity ray on a vertical line, or none if the
/// ray points away from or parallel to it.
std::optional<double> ray_cross_y(Vec2 pos, Vec2 vel, double line_x);

/// Absolute angle in [0, pi] between velocities at `frame` and `frame + window`;
/// 0 when either velocity is zero.
double change_of_direction(const Trace& trace, int object_id, int frame, int window);

/// Closest player to the ball with its distance; ties broken by lowest id.
std::pair<int, double> nearest_to_ball(const Trace& trace, int frame);

bool is_moving(const KinematicSeries& k, int frame);

}  // namespace socev
