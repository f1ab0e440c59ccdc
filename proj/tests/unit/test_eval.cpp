#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "socev/eval.hpp"

using namespace socev;

namespace {

AtomicEvent atom(AtomicType type, int t) {
    AtomicEvent e;
    e.type = type;
    e.t = t;
    return e;
}

IntervalEvent interval(ComplexType type, int s, int e) {
    IntervalEvent ev;
    ev.type = type;
    ev.start = s;
    ev.end = e;
    return ev;
}

/// Maximum-cardinality matching by exhaustive recursion, for cross-checking
/// match_points on small instances.
int brute_force_matching(const std::vector<int>& det, const std::vector<int>& truth,
                         int tolerance, size_t i, std::vector<bool>& used) {
    if (i == det.size()) return 0;
    int best = brute_force_matching(det, truth, tolerance, i + 1, used);
    for (size_t j = 0; j < truth.size(); ++j) {
        if (used[j] || std::abs(det[i] - truth[j]) > tolerance) continue;
        used[j] = true;
        best = std::max(best, 1 + brute_force_matching(det, truth, tolerance, i + 1, used));
        used[j] = false;
    }
    return best;
}

}  // namespace

TEST_CASE("point matching within the three-frame window") {
    auto m = match_points({100}, {102}, 3);
    CHECK(m.size() == 1);  // TP
    CHECK(match_points({100}, {104}, 3).empty());  // FP + FN
    // two detections near one truth event: one TP, one FP
    CHECK(match_points({100, 101}, {101}, 3).size() == 1);
}

TEST_CASE("point matching is maximum cardinality") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> t(0, 60);
    std::uniform_int_distribution<int> n(0, 8);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> det(n(rng)), truth(n(rng));
        for (auto& x : det) x = t(rng);
        for (auto& x : truth) x = t(rng);
        std::sort(det.begin(), det.end());
        std::sort(truth.begin(), truth.end());
        std::vector<bool> used(truth.size(), false);
        int expect = brute_force_matching(det, truth, 3, 0, used);
        CHECK(static_cast<int>(match_points(det, truth, 3).size()) == expect);
    }
}

TEST_CASE("interval IoU arithmetic") {
    CHECK(interval_iou({100, 199}, {150, 249}) == doctest::Approx(50.0 / 150.0).epsilon(1e-9));
    CHECK(interval_iou({100, 199}, {100, 199}) == 1.0);
    CHECK(interval_iou({100, 199}, {300, 400}) == 0.0);
    CHECK(interval_iou({100, 130}, {110, 140}) == doctest::Approx(21.0 / 41.0));
    // symmetry, range, identity-iff-equal on random intervals
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> u(0, 50);
    for (int i = 0; i < 200; ++i) {
        int a1 = u(rng), a2 = a1 + u(rng), b1 = u(rng), b2 = b1 + u(rng);
        double ab = interval_iou({a1, a2}, {b1, b2});
        CHECK(ab == interval_iou({b1, b2}, {a1, a2}));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        if (ab == 1.0) {
            CHECK(a1 == b1);
            CHECK(a2 == b2);
        }
    }
}

TEST_CASE("identical logs score all ones") {
    EventLog log;
    log.atomic.push_back(atom(AtomicType::KickingTheBall, 10));
    log.atomic.push_back(atom(AtomicType::Goal, 200));
    log.complex.push_back(interval(ComplexType::Pass, 10, 60));
    auto report = evaluate(log, log);
    for (const auto& [name, m] : report.per_type) {
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f1 == 1.0);
    }
    CHECK(report.macro_f1 == 1.0);
}

TEST_CASE("empty detections score zero without dividing by zero") {
    EventLog truth;
    truth.atomic.push_back(atom(AtomicType::Goal, 50));
    truth.complex.push_back(interval(ComplexType::Shot, 40, 40));
    EventLog empty;
    auto report = evaluate(empty, truth);
    for (const auto& [name, m] : report.per_type) {
        CHECK(m.precision == 0.0);
        CHECK(m.recall == 0.0);
        CHECK(m.f1 == 0.0);
        CHECK(m.fn == 1);
    }
}

TEST_CASE("OV20 accepts a pass shifted by a third of its length") {
    EventLog det, truth;
    det.complex.push_back(interval(ComplexType::Pass, 100, 130));
    truth.complex.push_back(interval(ComplexType::Pass, 110, 140));
    auto report = evaluate(det, truth);
    const auto& m = report.per_type.at("complex/Pass");
    CHECK(m.tp == 1);  // IoU 21/41 >= 0.2
    CHECK(m.fp == 0);
    CHECK(m.fn == 0);

    // Below the threshold the same pair is FP + FN.
    EventLog far;
    far.complex.push_back(interval(ComplexType::Pass, 100, 130));
    EventLog far_truth;
    far_truth.complex.push_back(interval(ComplexType::Pass, 128, 158));
    auto report2 = evaluate(far, far_truth);
    const auto& m2 = report2.per_type.at("complex/Pass");
    CHECK(m2.tp == 0);
    CHECK(m2.fp == 1);
    CHECK(m2.fn == 1);
}

TEST_CASE("atomic tolerance follows the config") {
    EventLog det, truth;
    det.atomic.push_back(atom(AtomicType::Goal, 100));
    truth.atomic.push_back(atom(AtomicType::Goal, 104));
    EvalConfig loose;
    loose.atomic_tolerance = 4;
    CHECK(evaluate(det, truth).per_type.at("atomic/Goal").tp == 0);
    CHECK(evaluate(det, truth, loose).per_type.at("atomic/Goal").tp == 1);
}

TEST_CASE("types never cross-match and monotonicity holds") {
    EventLog det, truth;
    det.atomic.push_back(atom(AtomicType::Goal, 100));
    truth.atomic.push_back(atom(AtomicType::BallOut, 100));
    auto report = evaluate(det, truth);
    CHECK(report.per_type.at("atomic/Goal").fp == 1);
    CHECK(report.per_type.at("atomic/BallOut").fn == 1);

    // Adding a detection never increases FN; adding truth never increases FP.
    EventLog det2 = det;
    det2.atomic.push_back(atom(AtomicType::BallOut, 400));
    auto r2 = evaluate(det2, truth);
    CHECK(r2.per_type.at("atomic/BallOut").fn <= report.per_type.at("atomic/BallOut").fn);
    EventLog truth2 = truth;
    truth2.atomic.push_back(atom(AtomicType::Goal, 900));
    auto r3 = evaluate(det, truth2);
    CHECK(r3.per_type.at("atomic/Goal").fp <= report.per_type.at("atomic/Goal").fp);
}

TEST_CASE("report renders both text and JSON") {
    EventLog log;
    log.atomic.push_back(atom(AtomicType::Goal, 10));
    auto report = evaluate(log, log);
    auto text = report.to_text();
    CHECK(text.find("Goal") != std::string::npos);
    auto json = report.to_json();
    CHECK(json.find("\"macro\"") != std::string::npos);
    CHECK(json.find("atomic/Goal") != std::string::npos);
}
