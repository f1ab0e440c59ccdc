#pragma once

#include <cmath>
#include <stdexcept>

namespace socev {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Pitch dimensions and derived landmarks. Origin is the lower-left corner,
/// x runs along the long side, all units in meters.
struct FieldGeometry {
    double length_m = 105.0;
    double width_m = 68.0;
    double goal_mouth_width_m = 7.32;
    double sideline_band_m = 13.84;
    double goal_area_depth_m = 16.5;

    void check() const {
        if (length_m <= 0 || width_m <= 0 || goal_mouth_width_m <= 0 ||
            sideline_band_m <= 0 || goal_area_depth_m <= 0)
            throw std::invalid_argument("field dimensions must be positive");
        if (goal_mouth_width_m >= width_m)
            throw std::invalid_argument("goal mouth wider than the pitch");
        if (sideline_band_m >= width_m / 2)
            throw std::invalid_argument("sideline band covers the whole pitch");
    }

    // Goal centers sit on the goal lines at mid width.
    Vec2 left_goal_center() const { return {0.0, width_m / 2}; }
    Vec2 right_goal_center() const { return {length_m, width_m / 2}; }

    double mouth_low_y() const { return width_m / 2 - goal_mouth_width_m / 2; }
    double mouth_high_y() const { return width_m / 2 + goal_mouth_width_m / 2; }

    bool inside_pitch(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= length_m && p.y >= 0.0 && p.y <= width_m;
    }

    bool in_mouth(double y) const { return y >= mouth_low_y() && y <= mouth_high_y(); }

    // Goal area approximated as the penalty box: depth from the goal line,
    // width = mouth + 2 * depth (the standard 40.32 m for defaults).
    double goal_area_half_width() const { return goal_mouth_width_m / 2 + goal_area_depth_m; }
};

}  // namespace socev
