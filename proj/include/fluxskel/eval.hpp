#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fluxskel/raster.hpp"

namespace fluxskel {

struct MatchTolerance {
    double rho = 0.0075;  // fraction of the image diagonal

    MatchTolerance() = default;
    explicit MatchTolerance(double fraction);
    double pixels(const GridDims& dims) const noexcept { return rho * dims.diagonal(); }
};

struct MatchCounts {
    std::size_t true_positives = 0;   // predicted pixels within d of the ground truth
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;  // ground-truth pixels with no prediction within d
    std::size_t recalled = 0;
    std::size_t predicted = 0;
    std::size_t ground_truth = 0;

    /// 1 when nothing was predicted.
    double precision() const noexcept;
    double recall() const noexcept;
    double f_measure() const noexcept;
};

double f_measure(double precision, double recall) noexcept;

/// Distance-based matching in both directions. Throws Errc::dimension_mismatch
/// or Errc::empty_ground_truth.
MatchCounts match_with_tolerance(const BinaryMap& pred, const BinaryMap& gt, MatchTolerance tol);

struct PrPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct EvalReport {
    std::vector<PrPoint> pr_points;  // ascending threshold
    PrPoint best;
    double best_f = 0.0;
    MatchCounts best_counts;
};

/// Thresholds i / (num_thresholds + 1) for i = 1..num_thresholds; a pixel is
/// predicted when confidence >= threshold. The best point maximises F, ties
/// going to the larger recall.
EvalReport pr_curve(const ScalarMap& confidence, const BinaryMap& gt, MatchTolerance tol,
                    int num_thresholds = 99);

/// Report with a single PR point at threshold 1 for a binary prediction.
EvalReport binary_report(const BinaryMap& pred, const BinaryMap& gt, MatchTolerance tol);

std::string report_to_json(const EvalReport& report, int indent = -1);
std::string report_to_csv(const EvalReport& report);

}  // namespace fluxskel
