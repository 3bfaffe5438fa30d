#include "smeval/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace smeval {

std::vector<double> rank_descending(std::span<const double> scores) {
    const size_t n = scores.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        // Positions i..j (0-based) share the average 1-based rank.
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman_rho(std::span<const double> ranks_a, std::span<const double> ranks_b,
                    bool* degenerate) {
    if (ranks_a.size() != ranks_b.size())
        throw std::invalid_argument("spearman_rho: length mismatch");
    if (ranks_a.size() < 2)
        throw std::invalid_argument("spearman_rho: need at least 2 entries");
    if (degenerate) *degenerate = false;

    const size_t n = ranks_a.size();
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ma += ranks_a[i];
        mb += ranks_b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);

    double va = 0.0, vb = 0.0, cov = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = ranks_a[i] - ma;
        const double db = ranks_b[i] - mb;
        va += da * da;
        vb += db * db;
        cov += da * db;
    }
    if (va == 0.0 || vb == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

}  // namespace smeval
