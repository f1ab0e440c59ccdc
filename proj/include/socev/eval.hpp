#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "socev/events.hpp"

namespace socev {

struct TypeMetrics {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    double precision = 0.0;  // 0 when no detections
    double recall = 0.0;     // 0 when no truth
    double f1 = 0.0;         // 0 when P + R == 0

    void finalize();
};

struct MetricsReport {
    // Keys are "atomic/<Type>" and "complex/<Type>" to keep the shared
    // BallPossession / Tackle names apart.
    std::map<std::string, TypeMetrics> per_type;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;

    std::string to_text() const;
    std::string to_json() const;
};

struct EvalConfig {
    int atomic_tolerance = 3;   // frames
    double iou_threshold = 0.2; // OV20
};

/// One-to-one matching of same-type timestamps within the tolerance.
/// Both inputs sorted ascending. Returns matched (detected, truth) index
/// pairs; the matching has maximum cardinality.
std::vector<std::pair<int, int>> match_points(const std::vector<int>& detected,
                                              const std::vector<int>& truth, int tolerance);

/// IoU on closed frame intervals (length = end - start + 1).
double interval_iou(std::pair<int, int> a, std::pair<int, int> b);

/// Greedy one-to-one interval matching by descending IoU, threshold applied.
std::vector<std::pair<int, int>> match_intervals(const std::vector<std::pair<int, int>>& detected,
                                                 const std::vector<std::pair<int, int>>& truth,
                                                 double iou_threshold);

MetricsReport evaluate(const EventLog& detected, const EventLog& truth,
                       const EvalConfig& config = {});

}  // namespace socev
