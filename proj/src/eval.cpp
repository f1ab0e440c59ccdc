#include "socev/eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace socev {

void TypeMetrics::finalize() {
    precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

std::vector<std::pair<int, int>> match_points(const std::vector<int>& detected,
                                              const std::vector<int>& truth, int tolerance) {
    // Both sequences are sorted and every detection's admissible truth set is
    // a contiguous range, so pairing each detection (in time order) with the
    // earliest still-unmatched truth inside the tolerance is maximum
    // cardinality.
    std::vector<std::pair<int, int>> out;
    size_t j = 0;
    for (size_t i = 0; i < detected.size(); ++i) {
        while (j < truth.size() && truth[j] < detected[i] - tolerance) ++j;
        if (j < truth.size() && truth[j] <= detected[i] + tolerance) {
            out.emplace_back(static_cast<int>(i), static_cast<int>(j));
            ++j;
        }
    }
    return out;
}

double interval_iou(std::pair<int, int> a, std::pair<int, int> b) {
    int inter_lo = std::max(a.first, b.first);
    int inter_hi = std::min(a.second, b.second);
    int inter = std::max(0, inter_hi - inter_lo + 1);
    int uni = (a.second - a.first + 1) + (b.second - b.first + 1) - inter;
    return uni > 0 ? static_cast<double>(inter) / uni : 0.0;
}

std::vector<std::pair<int, int>> match_intervals(const std::vector<std::pair<int, int>>& detected,
                                                 const std::vector<std::pair<int, int>>& truth,
                                                 double iou_threshold) {
    // (iou, det, truth) candidates, best first; ties resolved by index order.
    std::vector<std::tuple<double, int, int>> cand;
    for (size_t i = 0; i < detected.size(); ++i)
        for (size_t j = 0; j < truth.size(); ++j) {
            double iou = interval_iou(detected[i], truth[j]);
            if (iou >= iou_threshold)
                cand.emplace_back(iou, static_cast<int>(i), static_cast<int>(j));
        }
    std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
        if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
        return std::get<2>(x) < std::get<2>(y);
    });
    std::set<int> used_det, used_truth;
    std::vector<std::pair<int, int>> out;
    for (const auto& [iou, i, j] : cand) {
        if (used_det.count(i) || used_truth.count(j)) continue;
        used_det.insert(i);
        used_truth.insert(j);
        out.emplace_back(i, j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

MetricsReport evaluate(const EventLog& detected, const EventLog& truth,
                       const EvalConfig& config) {
    MetricsReport report;

    std::set<std::string> keys;
    std::map<std::string, std::vector<int>> det_points, truth_points;
    std::map<std::string, std::vector<std::pair<int, int>>> det_ivals, truth_ivals;

    for (const auto& e : detected.atomic)
        det_points["atomic/" + atomic_type_name(e.type)].push_back(e.t);
    for (const auto& e : truth.atomic)
        truth_points["atomic/" + atomic_type_name(e.type)].push_back(e.t);
    for (const auto& e : detected.complex)
        det_ivals["complex/" + complex_type_name(e.type)].emplace_back(e.start, e.end);
    for (const auto& e : truth.complex)
        truth_ivals["complex/" + complex_type_name(e.type)].emplace_back(e.start, e.end);

    for (const auto& [k, v] : det_points) keys.insert(k);
    for (const auto& [k, v] : truth_points) keys.insert(k);
    for (const auto& [k, v] : det_ivals) keys.insert(k);
    for (const auto& [k, v] : truth_ivals) keys.insert(k);

    for (const auto& key : keys) {
        TypeMetrics m;
        if (key.rfind("atomic/", 0) == 0) {
            auto& d = det_points[key];
            auto& t = truth_points[key];
            std::sort(d.begin(), d.end());
            std::sort(t.begin(), t.end());
            int matched = static_cast<int>(match_points(d, t, config.atomic_tolerance).size());
            m.tp = matched;
            m.fp = static_cast<int>(d.size()) - matched;
            m.fn = static_cast<int>(t.size()) - matched;
        } else {
            auto& d = det_ivals[key];
            auto& t = truth_ivals[key];
            int matched =
                static_cast<int>(match_intervals(d, t, config.iou_threshold).size());
            m.tp = matched;
            m.fp = static_cast<int>(d.size()) - matched;
            m.fn = static_cast<int>(t.size()) - matched;
        }
        m.finalize();
        report.per_type[key] = m;
    }

    if (!report.per_type.empty()) {
        for (const auto& [k, m] : report.per_type) {
            report.macro_precision += m.precision;
            report.macro_recall += m.recall;
            report.macro_f1 += m.f1;
        }
        report.macro_precision /= report.per_type.size();
        report.macro_recall /= report.per_type.size();
        report.macro_f1 /= report.per_type.size();
    }
    return report;
}

std::string MetricsReport::to_text() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    for (const auto& [key, m] : per_type) {
        os << key << ": tp=" << m.tp << " fp=" << m.fp << " fn=" << m.fn
           << " P=" << m.precision << " R=" << m.recall << " F1=" << m.f1 << '\n';
    }
    os << "macro: P=" << macro_precision << " R=" << macro_recall << " F1=" << macro_f1 << '\n';
    return os.str();
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    for (const auto& [key, m] : per_type) {
        j["per_type"][key] = {{"tp", m.tp},           {"fp", m.fp},       {"fn", m.fn},
                              {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    }
    j["macro"] = {{"precision", macro_precision}, {"recall", macro_recall}, {"f1", macro_f1}};
    return j.dump(2);
}

}  // namespace socev
