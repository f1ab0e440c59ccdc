#include <stdexcept>

#include "doctest.h"
#include "socev/geometry.hpp"

using namespace socev;

TEST_CASE("euclidean distance") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({12.5, -3}, {12.5, -3}) == 0.0);
    CHECK(distance({10, 10}, {10, 12.5}) == doctest::Approx(2.5));
    // symmetry and non-negativity on a small sweep
    for (double x = -2; x <= 2; x += 0.5) {
        Vec2 a{x, 2 * x}, b{1 - x, x * x};
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
        CHECK(distance(a, b) >= 0.0);
    }
}

TEST_CASE("default field landmarks") {
    FieldGeometry g;
    g.check();
    CHECK(g.length_m == 105.0);
    CHECK(g.width_m == 68.0);
    CHECK(g.mouth_low_y() == doctest::Approx(30.34));
    CHECK(g.mouth_high_y() == doctest::Approx(37.66));
    CHECK(g.goal_area_half_width() == doctest::Approx(20.16));
    CHECK(g.left_goal_center().x == 0.0);
    CHECK(g.right_goal_center().x == 105.0);
    CHECK(g.right_goal_center().y == 34.0);
}

TEST_CASE("goal mouth membership") {
    FieldGeometry g;
    CHECK(g.in_mouth(34.0));
    CHECK(g.in_mouth(30.34));
    CHECK(g.in_mouth(37.66));
    CHECK_FALSE(g.in_mouth(30.33));
    CHECK_FALSE(g.in_mouth(37.67));
    CHECK_FALSE(g.in_mouth(10.0));
}

TEST_CASE("inside_pitch boundary") {
    FieldGeometry g;
    CHECK(g.inside_pitch({0, 0}));
    CHECK(g.inside_pitch({105, 68}));
    CHECK_FALSE(g.inside_pitch({-0.01, 34}));
    CHECK_FALSE(g.inside_pitch({50, 68.01}));
}

TEST_CASE("invalid dimensions rejected") {
    FieldGeometry g;
    g.length_m = -1;
    CHECK_THROWS_AS(g.check(), std::invalid_argument);
    g = FieldGeometry{};
    g.goal_mouth_width_m = 70.0;  // wider than the pitch
    CHECK_THROWS_AS(g.check(), std::invalid_argument);
    g = FieldGeometry{};
    g.sideline_band_m = 40.0;  // covers the whole width
    CHECK_THROWS_AS(g.check(), std::invalid_argument);
}
