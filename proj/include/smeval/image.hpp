#ifndef SMEVAL_IMAGE_HPP
#define SMEVAL_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace smeval {

/// Non-binary prediction map. Row-major, every value in [0,1].
struct GrayMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    GrayMap() = default;
    GrayMap(int w, int h, double fill = 0.0);
    GrayMap(int w, int h, std::vector<double> vals);

    double at(int r, int c) const { return values[static_cast<size_t>(r) * width + c]; }
    double& at(int r, int c) { return values[static_cast<size_t>(r) * width + c]; }
    size_t size() const { return values.size(); }
};

/// Binary mask (ground truth or thresholded prediction). true = foreground.
struct BinMap {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> values;  // 0 or 1

    BinMap() = default;
    BinMap(int w, int h, bool fill = false);

    bool at(int r, int c) const { return values[static_cast<size_t>(r) * width + c] != 0; }
    void set(int r, int c, bool v) { values[static_cast<size_t>(r) * width + c] = v ? 1 : 0; }
    size_t size() const { return values.size(); }

    size_t foreground_count() const;
    bool operator==(const BinMap& o) const = default;
};

/// Pixel-wise confusion totals for a (prediction, ground truth) pair.
struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t tn = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;

    uint64_t total() const { return tp + tn + fp + fn; }
    bool operator==(const ConfusionCounts& o) const = default;
};

/// Mean / spread of one pixel region, optionally with the covariance
/// against a paired region of the same length.
struct RegionStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::optional<double> covariance;  // only when a partner sequence was given
};

inline void require_same_dims(int w1, int h1, int w2, int h2) {
    if (w1 != w2 || h1 != h2)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(w1) + "x" +
                                    std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                                    std::to_string(h2));
}

ConfusionCounts confusion_counts(const BinMap& pred, const BinMap& gt);

/// Foreground iff value >= t. Requires 0 <= t <= 1.
BinMap threshold_map(const GrayMap& sm, double t);

/// Arithmetic mean of foreground pixel coordinates (row, col).
/// Empty foreground falls back to the image center ((h-1)/2, (w-1)/2).
std::pair<double, double> foreground_centroid(const BinMap& gt);

/// value' = 1 - value, elementwise.
GrayMap invert(const GrayMap& m);

/// GT cast to a {0.0, 1.0}-valued gray map.
GrayMap to_gray(const BinMap& m);

/// Mean, standard deviation and (if partner given) covariance.
/// Variance and covariance use the n-1 divisor; n == 1 gives zero spread.
RegionStats region_stats(std::span<const double> values,
                         std::span<const double> partner = {});

double mean_value(const GrayMap& m);

}  // namespace smeval

#endif
