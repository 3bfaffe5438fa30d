#ifndef SMEVAL_BASELINES_HPP
#define SMEVAL_BASELINES_HPP

#include <vector>

#include "smeval/image.hpp"

namespace smeval {

enum class CurveKind { roc, precision_recall };

/// Threshold-sweep curve. ROC points are (FPR, TPR) sorted ascending and
/// anchored at (0,0) and (1,1); PR points are (Recall, Precision) sorted
/// by recall.
struct Curve {
    CurveKind kind = CurveKind::roc;
    std::vector<std::pair<double, double>> points;
};

/// Weighted F-measure internals. The kernel/decay constants follow the
/// published reference procedure, not anything re-derived here.
struct FbwParams {
    double beta_sq = 1.0;
    double dependency_sigma = 5.0;      // pixels
    int dependency_kernel_radius = 3;   // 7x7 kernel
    double importance_decay = 5.0;

    void validate() const;
};

/// (1+b2) P R / (b2 P + R) with P = tp/(tp+fp), R = tp/(tp+fn).
/// tp == 0 returns 0, which covers every 0/0 corner.
double f_beta(const ConfusionCounts& counts, double beta_sq);

/// Sweep num_thresholds evenly spaced thresholds over [0,1], collect
/// (FPR, TPR) points, append the (0,0)/(1,1) anchors and sort.
/// GT must contain both classes.
Curve roc_curve(const GrayMap& sm, const BinMap& gt, int num_thresholds = 256);

/// Trapezoidal area under a ROC curve.
double auc(const Curve& curve);

/// Same sweep collecting (Recall, Precision); empty-prediction thresholds
/// report precision 1 by convention.
Curve pr_curve(const GrayMap& sm, const BinMap& gt, int num_thresholds = 256);

/// Mean of PASCAL-style interpolated precision max_{r' >= r} p(r') over an
/// evenly spaced recall grid. Convention points from empty predictions
/// (recall 0, precision 1) carry no evidence and are excluded from the
/// interpolation.
double average_precision(const Curve& curve, int num_recall_points = 11);

/// Weighted F-measure: errors |gt - sm| are smoothed over the foreground
/// by a truncated Gaussian dependency kernel (background errors first take
/// the value at their nearest foreground pixel) and scaled on the
/// background by a distance-decayed importance weight; weighted TP/FP/FN
/// then feed the F-measure. GT needs at least one foreground pixel.
double fbw(const GrayMap& sm, const BinMap& gt, const FbwParams& params = {});

/// Squared Euclidean distance to the nearest foreground pixel plus that
/// pixel's linear index, for every pixel. Ties resolve to the smallest
/// (row, col). Used by fbw; exposed for testing.
void distance_transform(const BinMap& fg, std::vector<double>& dist,
                        std::vector<int64_t>& nearest_index);

}  // namespace smeval

#endif
