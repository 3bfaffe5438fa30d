#include "smeval/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smeval {

namespace {

struct Rates {
    double fpr, tpr, recall, precision;
    bool empty_prediction;
};

Rates rates_at(const GrayMap& sm, const BinMap& gt, double t) {
    const ConfusionCounts c = confusion_counts(threshold_map(sm, t), gt);
    Rates r{};
    r.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
    r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    r.recall = r.tpr;
    r.empty_prediction = (c.tp + c.fp) == 0;
    r.precision = r.empty_prediction
                      ? 1.0
                      : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    return r;
}

void check_two_class(const BinMap& gt) {
    const size_t fg = gt.foreground_count();
    if (fg == 0 || fg == gt.size())
        throw std::invalid_argument("curve sweep requires a GT with both classes");
}

void check_thresholds(int n) {
    if (n < 2) throw std::invalid_argument("num_thresholds must be at least 2");
}

}  // namespace

void FbwParams::validate() const {
    if (!(beta_sq > 0.0) || !(dependency_sigma > 0.0) || dependency_kernel_radius < 1 ||
        !(importance_decay > 0.0))
        throw std::invalid_argument("FbwParams fields must be positive");
}

double f_beta(const ConfusionCounts& counts, double beta_sq) {
    if (!(beta_sq > 0.0)) throw std::invalid_argument("beta_sq must be positive");
    if (counts.tp == 0) return 0.0;
    const double p = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    const double r = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    return (1.0 + beta_sq) * p * r / (beta_sq * p + r);
}

Curve roc_curve(const GrayMap& sm, const BinMap& gt, int num_thresholds) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    check_two_class(gt);
    check_thresholds(num_thresholds);

    Curve curve;
    curve.kind = CurveKind::roc;
    curve.points.reserve(num_thresholds + 2);
    for (int j = 0; j < num_thresholds; ++j) {
        const double t = static_cast<double>(j) / (num_thresholds - 1);
        const Rates r = rates_at(sm, gt, t);
        curve.points.emplace_back(r.fpr, r.tpr);
    }
    curve.points.emplace_back(0.0, 0.0);
    curve.points.emplace_back(1.0, 1.0);
    std::sort(curve.points.begin(), curve.points.end());
    return curve;
}

double auc(const Curve& curve) {
    if (curve.kind != CurveKind::roc)
        throw std::invalid_argument("auc expects a ROC curve");
    double area = 0.0;
    for (size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [x0, y0] = curve.points[i - 1];
        const auto& [x1, y1] = curve.points[i];
        area += (x1 - x0) * (y0 + y1) / 2.0;
    }
    return area;
}

Curve pr_curve(const GrayMap& sm, const BinMap& gt, int num_thresholds) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    check_two_class(gt);
    check_thresholds(num_thresholds);

    Curve curve;
    curve.kind = CurveKind::precision_recall;
    curve.points.reserve(num_thresholds);
    for (int j = 0; j < num_thresholds; ++j) {
        const double t = static_cast<double>(j) / (num_thresholds - 1);
        const Rates r = rates_at(sm, gt, t);
        curve.points.emplace_back(r.recall, r.precision);
    }
    std::sort(curve.points.begin(), curve.points.end());
    return curve;
}

double average_precision(const Curve& curve, int num_recall_points) {
    if (curve.kind != CurveKind::precision_recall)
        throw std::invalid_argument("average_precision expects a PR curve");
    if (num_recall_points < 2)
        throw std::invalid_argument("num_recall_points must be at least 2");

    double sum = 0.0;
    for (int j = 0; j < num_recall_points; ++j) {
        const double r = static_cast<double>(j) / (num_recall_points - 1);
        double best = 0.0;
        for (const auto& [rr, pp] : curve.points) {
            if (rr == 0.0 && pp == 1.0) continue;  // empty-prediction convention point
            if (rr >= r) best = std::max(best, pp);
        }
        sum += best;
    }
    return sum / num_recall_points;
}

void distance_transform(const BinMap& fg, std::vector<double>& dist,
                        std::vector<int64_t>& nearest_index) {
    const int w = fg.width, h = fg.height;
    const size_t n = fg.size();
    dist.assign(n, std::numeric_limits<double>::infinity());
    nearest_index.assign(n, -1);

    constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

    // Per column: nearest foreground row (ties to the smaller row).
    std::vector<int64_t> col_d(n, kInf);   // |r - r'|
    std::vector<int> col_site(n, -1);      // that r'
    for (int c = 0; c < w; ++c) {
        int last = -1;
        for (int r = 0; r < h; ++r) {
            if (fg.at(r, c)) last = r;
            if (last >= 0) {
                col_d[static_cast<size_t>(r) * w + c] = r - last;
                col_site[static_cast<size_t>(r) * w + c] = last;
            }
        }
        int next = -1;
        for (int r = h - 1; r >= 0; --r) {
            if (fg.at(r, c)) next = r;
            const size_t i = static_cast<size_t>(r) * w + c;
            if (next >= 0 && static_cast<int64_t>(next - r) < col_d[i]) {
                col_d[i] = next - r;
                col_site[i] = next;
            }
        }
    }

    // Per row: scan all columns, keeping the lexicographically smallest
    // (squared distance, site row, site col).
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int64_t best_d2 = kInf;
            int best_r = -1, best_c = -1;
            for (int cc = 0; cc < w; ++cc) {
                const size_t j = static_cast<size_t>(r) * w + cc;
                if (col_d[j] == kInf) continue;
                const int64_t dd = col_d[j] * col_d[j] +
                                   static_cast<int64_t>(c - cc) * (c - cc);
                if (dd < best_d2 ||
                    (dd == best_d2 &&
                     (col_site[j] < best_r || (col_site[j] == best_r && cc < best_c)))) {
                    best_d2 = dd;
                    best_r = col_site[j];
                    best_c = cc;
                }
            }
            const size_t i = static_cast<size_t>(r) * w + c;
            if (best_r >= 0) {
                dist[i] = std::sqrt(static_cast<double>(best_d2));
                nearest_index[i] = static_cast<int64_t>(best_r) * w + best_c;
            }
        }
    }
}

double fbw(const GrayMap& sm, const BinMap& gt, const FbwParams& params) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    params.validate();
    const size_t n_fg = gt.foreground_count();
    if (n_fg == 0) throw std::invalid_argument("fbw requires a GT foreground");

    const int w = sm.width, h = sm.height;
    const size_t n = sm.size();

    std::vector<double> err(n);
    for (size_t i = 0; i < n; ++i)
        err[i] = std::abs(sm.values[i] - (gt.values[i] ? 1.0 : 0.0));

    std::vector<double> dist;
    std::vector<int64_t> nearest;
    distance_transform(gt, dist, nearest);

    // Background errors take the value at their nearest foreground pixel
    // before smoothing, so the kernel sees a continuous foreground error.
    std::vector<double> err_fg = err;
    for (size_t i = 0; i < n; ++i)
        if (!gt.values[i]) err_fg[i] = err[nearest[i]];

    // Separable truncated Gaussian, replicate borders.
    const int rad = params.dependency_kernel_radius;
    std::vector<double> kernel(2 * rad + 1);
    double ksum = 0.0;
    for (int k = -rad; k <= rad; ++k) {
        kernel[k + rad] = std::exp(-(k * k) / (2.0 * params.dependency_sigma *
                                               params.dependency_sigma));
        ksum += kernel[k + rad];
    }
    for (double& v : kernel) v /= ksum;

    std::vector<double> tmp(n), smooth(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -rad; k <= rad; ++k) {
                const int cc = std::clamp(c + k, 0, w - 1);
                acc += kernel[k + rad] * err_fg[static_cast<size_t>(r) * w + cc];
            }
            tmp[static_cast<size_t>(r) * w + c] = acc;
        }
    }
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -rad; k <= rad; ++k) {
                const int rr = std::clamp(r + k, 0, h - 1);
                acc += kernel[k + rad] * tmp[static_cast<size_t>(rr) * w + c];
            }
            smooth[static_cast<size_t>(r) * w + c] = acc;
        }
    }

    const double decay = std::log(0.5) / params.importance_decay;
    double fg_err = 0.0, bg_err = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (gt.values[i]) {
            fg_err += std::min(err[i], smooth[i]);
        } else {
            const double importance = 2.0 - std::exp(decay * dist[i]);
            bg_err += err[i] * importance;
        }
    }

    const double tp_w = std::max(0.0, static_cast<double>(n_fg) - fg_err);
    const double fp_w = bg_err;
    const double recall = tp_w / static_cast<double>(n_fg);
    const double precision = (tp_w + fp_w) > 0.0 ? tp_w / (tp_w + fp_w) : 0.0;
    const double den = params.beta_sq * precision + recall;
    if (den <= 0.0) return 0.0;
    return (1.0 + params.beta_sq) * precision * recall / den;
}

}  // namespace smeval
