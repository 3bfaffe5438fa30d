#ifndef SMEVAL_S_MEASURE_HPP
#define SMEVAL_S_MEASURE_HPP

#include <span>
#include <vector>

#include "smeval/image.hpp"

namespace smeval {

enum class BlockWeighting {
    foreground,  // w_k proportional to the GT foreground pixels the block holds
    area,        // w_k proportional to block area (cross-check mode)
};

struct SMeasureParams {
    double alpha = 0.5;    // object/region mixing, in [0,1]
    double lambda = 0.5;   // dispersion penalty weight, >= 0
    int k_blocks = 4;      // total leaf blocks, power of 4
    BlockWeighting weighting = BlockWeighting::foreground;

    void validate() const;
};

/// Half-open pixel rectangle [r0,r1) x [c0,c1).
struct BlockRect {
    int r0 = 0, c0 = 0, r1 = 0, c1 = 0;
    int rows() const { return r1 - r0; }
    int cols() const { return c1 - c0; }
    long long area() const { return static_cast<long long>(rows()) * cols(); }
};

struct Block {
    BlockRect rect;
    double weight = 0.0;
};

/// Disjoint cover of the image by recursively split rectangles.
/// Weights sum to 1 (empty rectangles produced by forced cuts on tiny
/// images carry weight 0 and no pixels).
struct BlockPartition {
    std::vector<Block> blocks;
};

struct ObjectScores {
    double o_fg = 0.0;
    double o_bg = 0.0;
    double mu = 0.0;  // GT foreground fraction of the image
    double combined() const { return mu * o_fg + (1.0 - mu) * o_bg; }
};

/// Single-block structural similarity: the luminance/contrast/structure
/// product collapsed to Q = 4*mx*my*cov / ((mx^2+my^2)(vx+vy)), with n-1
/// divisors. Degenerate cases are resolved explicitly instead of by an
/// epsilon: two constant signals compare 1 when their means agree to 1e-8
/// and 0 otherwise; a vanishing denominator with nonzero spread scores 0
/// unless the signals are identical. Result is clamped to [-1, 1].
double ssim_block(std::span<const double> x, std::span<const double> y);

/// Split the image into k_blocks rectangles, cutting each level at the
/// (rounded) centroid of the GT foreground restricted to the rectangle,
/// or at the rectangle center when that restriction is empty. Weights per
/// `weighting`; an entirely empty GT falls back to area fractions.
BlockPartition partition_blocks(const BinMap& gt, int k_blocks,
                                BlockWeighting weighting = BlockWeighting::foreground);

/// Region-aware similarity: sum of w_k * ssim over the partition blocks.
double region_score(const GrayMap& sm, const BinMap& gt, int k_blocks,
                    BlockWeighting weighting = BlockWeighting::foreground);

/// 2m / (m^2 + 1 + 2*lambda*s) for the mean m and stddev s of the region.
double object_component(std::span<const double> region_values, double lambda);

/// Foreground term over SM at GT foreground, background term over 1-SM at
/// GT background, combined by the foreground fraction mu. Requires a GT
/// with both classes present.
ObjectScores object_score(const GrayMap& sm, const BinMap& gt, double lambda);

/// The structure measure. All-background GT scores 1 - mean(sm),
/// all-foreground GT scores mean(sm); otherwise
/// alpha * S_object + (1-alpha) * S_region, clamped to [0,1].
double structure_measure(const GrayMap& sm, const BinMap& gt,
                         const SMeasureParams& params = {});

}  // namespace smeval

#endif
