#include "smeval/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smeval {

namespace {

void check_dims(int w, int h) {
    if (w < 1 || h < 1)
        throw std::invalid_argument("map dimensions must be at least 1x1");
}

}  // namespace

GrayMap::GrayMap(int w, int h, double fill) : width(w), height(h) {
    check_dims(w, h);
    values.assign(static_cast<size_t>(w) * h, fill);
}

GrayMap::GrayMap(int w, int h, std::vector<double> vals)
    : width(w), height(h), values(std::move(vals)) {
    check_dims(w, h);
    if (values.size() != static_cast<size_t>(w) * h)
        throw std::invalid_argument("value count does not match dimensions");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("gray map value outside [0,1]");
}

BinMap::BinMap(int w, int h, bool fill) : width(w), height(h) {
    check_dims(w, h);
    values.assign(static_cast<size_t>(w) * h, fill ? 1 : 0);
}

size_t BinMap::foreground_count() const {
    return static_cast<size_t>(std::count(values.begin(), values.end(), uint8_t{1}));
}

ConfusionCounts confusion_counts(const BinMap& pred, const BinMap& gt) {
    require_same_dims(pred.width, pred.height, gt.width, gt.height);
    ConfusionCounts c;
    for (size_t i = 0; i < gt.values.size(); ++i) {
        const bool p = pred.values[i] != 0;
        const bool g = gt.values[i] != 0;
        if (p && g) ++c.tp;
        else if (p && !g) ++c.fp;
        else if (!p && g) ++c.fn;
        else ++c.tn;
    }
    return c;
}

BinMap threshold_map(const GrayMap& sm, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("threshold must lie in [0,1]");
    BinMap out(sm.width, sm.height);
    for (size_t i = 0; i < sm.values.size(); ++i)
        out.values[i] = sm.values[i] >= t ? 1 : 0;
    return out;
}

std::pair<double, double> foreground_centroid(const BinMap& gt) {
    uint64_t n = 0;
    uint64_t row_sum = 0, col_sum = 0;
    for (int r = 0; r < gt.height; ++r) {
        for (int c = 0; c < gt.width; ++c) {
            if (gt.at(r, c)) {
                ++n;
                row_sum += static_cast<uint64_t>(r);
                col_sum += static_cast<uint64_t>(c);
            }
        }
    }
    if (n == 0)
        return {(gt.height - 1) / 2.0, (gt.width - 1) / 2.0};
    return {static_cast<double>(row_sum) / n, static_cast<double>(col_sum) / n};
}

GrayMap invert(const GrayMap& m) {
    GrayMap out(m.width, m.height);
    for (size_t i = 0; i < m.values.size(); ++i)
        out.values[i] = 1.0 - m.values[i];
    return out;
}

GrayMap to_gray(const BinMap& m) {
    GrayMap out(m.width, m.height);
    for (size_t i = 0; i < m.values.size(); ++i)
        out.values[i] = m.values[i] ? 1.0 : 0.0;
    return out;
}

RegionStats region_stats(std::span<const double> values, std::span<const double> partner) {
    if (values.empty())
        throw std::invalid_argument("region_stats: empty sequence");
    if (!partner.empty() && partner.size() != values.size())
        throw std::invalid_argument("region_stats: partner length mismatch");

    const size_t n = values.size();
    // A constant sequence must report exactly zero spread; summation
    // noise would otherwise leak into the degenerate-case rules.
    const bool constant = std::all_of(values.begin(), values.end(),
                                      [&](double v) { return v == values.front(); });

    RegionStats s;
    if (constant) {
        s.mean = values.front();
    } else {
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean = sum / static_cast<double>(n);
    }

    if (n == 1 || constant) {
        s.stddev = 0.0;
        if (!partner.empty()) s.covariance = 0.0;
        return s;
    }

    double pmean = 0.0;
    if (!partner.empty()) {
        double psum = 0.0;
        for (double v : partner) psum += v;
        pmean = psum / static_cast<double>(n);
    }

    double var = 0.0, cov = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = values[i] - s.mean;
        var += d * d;
        if (!partner.empty()) cov += d * (partner[i] - pmean);
    }
    s.stddev = std::sqrt(var / static_cast<double>(n - 1));
    if (!partner.empty()) s.covariance = cov / static_cast<double>(n - 1);
    return s;
}

double mean_value(const GrayMap& m) {
    double sum = 0.0;
    for (double v : m.values) sum += v;
    return sum / static_cast<double>(m.values.size());
}

}  // namespace smeval
