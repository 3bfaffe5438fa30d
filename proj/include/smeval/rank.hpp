#ifndef SMEVAL_RANK_HPP
#define SMEVAL_RANK_HPP

#include <span>
#include <vector>

namespace smeval {

/// Ranks by descending score, rank 1 = best. Tied scores share the
/// average of the ranks they straddle (fractional ranks).
std::vector<double> rank_descending(std::span<const double> scores);

/// Pearson correlation of two tie-averaged rank vectors, in [-1, 1].
/// A constant input vector makes the correlation undefined; the result is
/// then 0 and *degenerate (when supplied) is set.
double spearman_rho(std::span<const double> ranks_a, std::span<const double> ranks_b,
                    bool* degenerate = nullptr);

}  // namespace smeval

#endif
