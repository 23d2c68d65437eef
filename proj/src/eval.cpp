#include "fluxskel/eval.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fluxskel/dt.hpp"

namespace fluxskel {

MatchTolerance::MatchTolerance(double fraction) : rho(fraction) {
    if (!(fraction > 0.0) || !std::isfinite(fraction)) throw Error(Errc::invalid_argument, "rho must be > 0");
}

double f_measure(double precision, double recall) noexcept {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

double MatchCounts::precision() const noexcept {
    return predicted == 0 ? 1.0 : static_cast<double>(true_positives) / static_cast<double>(predicted);
}

double MatchCounts::recall() const noexcept {
    return ground_truth == 0 ? 0.0 : static_cast<double>(recalled) / static_cast<double>(ground_truth);
}

double MatchCounts::f_measure() const noexcept { return fluxskel::f_measure(precision(), recall()); }

namespace {

// Squared-distance rasters are exact integers; d^2 is compared in double.
bool within(std::int64_t squared, double d2) { return static_cast<double>(squared) <= d2; }

MatchCounts match_against(const BinaryMap& pred, const BinaryMap& gt, const Raster<std::int64_t>& gt_sq, double d) {
    MatchCounts c;
    const double d2 = d * d;
    c.ground_truth = count_true(gt);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!pred[i]) continue;
        ++c.predicted;
        if (within(gt_sq[i], d2)) ++c.true_positives;
    }
    c.false_positives = c.predicted - c.true_positives;
    if (c.predicted > 0) {
        const auto pred_sq = euclidean_dt_with_labels(pred).squared;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (gt[i] && within(pred_sq[i], d2)) ++c.recalled;
        }
    }
    c.false_negatives = c.ground_truth - c.recalled;
    return c;
}

void check_inputs(const GridDims& a, const BinaryMap& gt) {
    if (a != gt.dims()) throw Error(Errc::dimension_mismatch);
    if (count_true(gt) == 0) throw Error(Errc::empty_ground_truth);
}

nlohmann::ordered_json to_json(const EvalReport& report) {
    nlohmann::ordered_json pr = nlohmann::ordered_json::array();
    for (const auto& p : report.pr_points) {
        pr.push_back({{"t", p.threshold}, {"p", p.precision}, {"r", p.recall}});
    }
    const auto& c = report.best_counts;
    return {
        {"pr", pr},
        {"best",
         {{"t", report.best.threshold}, {"p", report.best.precision}, {"r", report.best.recall}, {"f", report.best_f}}},
        {"counts",
         {{"true_positives", c.true_positives},
          {"false_positives", c.false_positives},
          {"false_negatives", c.false_negatives},
          {"predicted", c.predicted},
          {"ground_truth", c.ground_truth}}},
    };
}

}  // namespace

MatchCounts match_with_tolerance(const BinaryMap& pred, const BinaryMap& gt, MatchTolerance tol) {
    check_inputs(pred.dims(), gt);
    return match_against(pred, gt, euclidean_dt_with_labels(gt).squared, tol.pixels(gt.dims()));
}

EvalReport pr_curve(const ScalarMap& confidence, const BinaryMap& gt, MatchTolerance tol, int num_thresholds) {
    check_inputs(confidence.dims(), gt);
    if (num_thresholds < 1) throw Error(Errc::invalid_argument, "num_thresholds must be >= 1");
    for (double c : confidence.values()) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw Error(Errc::invalid_argument, "confidence must be finite and >= 0");
    }
    const auto gt_sq = euclidean_dt_with_labels(gt).squared;
    const double d = tol.pixels(gt.dims());

    EvalReport report;
    double best_f = -1.0;
    BinaryMap pred(gt.dims());
    for (int i = 1; i <= num_thresholds; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(num_thresholds + 1);
        for (std::size_t j = 0; j < pred.size(); ++j) pred[j] = confidence[j] >= t ? 1 : 0;
        const MatchCounts c = match_against(pred, gt, gt_sq, d);
        const PrPoint point{t, c.precision(), c.recall()};
        report.pr_points.push_back(point);
        const double f = c.f_measure();
        if (f > best_f || (f == best_f && point.recall > report.best.recall)) {
            best_f = f;
            report.best = point;
            report.best_f = f;
            report.best_counts = c;
        }
    }
    return report;
}

EvalReport binary_report(const BinaryMap& pred, const BinaryMap& gt, MatchTolerance tol) {
    const MatchCounts c = match_with_tolerance(pred, gt, tol);
    EvalReport report;
    report.best = PrPoint{1.0, c.precision(), c.recall()};
    report.best_f = c.f_measure();
    report.best_counts = c;
    report.pr_points.push_back(report.best);
    return report;
}

std::string report_to_json(const EvalReport& report, int indent) { return to_json(report).dump(indent); }

std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "threshold,precision,recall\n";
    for (const auto& p : report.pr_points) out << p.threshold << ',' << p.precision << ',' << p.recall << '\n';
    return out.str();
}

}  // namespace fluxskel
