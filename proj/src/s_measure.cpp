#include "smeval/s_measure.hpp"

#include <algorithm>
#include <cmath>

namespace smeval {

namespace {

constexpr double kConstantMeanTol = 1e-8;

bool is_power_of_four(int k) {
    if (k < 4) return false;
    while (k % 4 == 0) k /= 4;
    return k == 1;
}

// Cut offset inside [0, extent): number of rows/cols assigned to the
// first side. Nearest integer of the 1-based centroid (ties to even),
// clamped so both sides stay nonempty whenever extent allows it.
int cut_offset(double centroid0, int extent) {
    if (extent <= 1) return 1;
    long off = std::lrint(centroid0 + 1.0);
    if (off < 1) off = 1;
    if (off > extent - 1) off = extent - 1;
    return static_cast<int>(off);
}

struct FgCentroid {
    long long count = 0;
    double row = 0.0, col = 0.0;
};

FgCentroid block_centroid(const BinMap& gt, const BlockRect& b) {
    long long n = 0, rs = 0, cs = 0;
    for (int r = b.r0; r < b.r1; ++r)
        for (int c = b.c0; c < b.c1; ++c)
            if (gt.at(r, c)) {
                ++n;
                rs += r - b.r0;
                cs += c - b.c0;
            }
    FgCentroid out;
    out.count = n;
    if (n > 0) {
        out.row = static_cast<double>(rs) / n;
        out.col = static_cast<double>(cs) / n;
    } else {
        // Block center (1-based (h+1)/2 maps to 0-based (h-1)/2).
        out.row = (b.rows() - 1) / 2.0;
        out.col = (b.cols() - 1) / 2.0;
    }
    return out;
}

void split_recursive(const BinMap& gt, const BlockRect& b, int levels,
                     std::vector<BlockRect>& out) {
    if (levels == 0) {
        out.push_back(b);
        return;
    }
    if (b.rows() < 1 || b.cols() < 1) {
        out.push_back(b);  // degenerate rect, kept to preserve the count
        return;
    }
    const FgCentroid cen = block_centroid(gt, b);
    const int dr = cut_offset(cen.row, b.rows());
    const int dc = cut_offset(cen.col, b.cols());
    const int rm = b.r0 + std::min(dr, b.rows());
    const int cm = b.c0 + std::min(dc, b.cols());
    const BlockRect quads[4] = {
        {b.r0, b.c0, rm, cm},
        {b.r0, cm, rm, b.c1},
        {rm, b.c0, b.r1, cm},
        {rm, cm, b.r1, b.c1},
    };
    for (const BlockRect& q : quads) split_recursive(gt, q, levels - 1, out);
}

long long fg_in_rect(const BinMap& gt, const BlockRect& b) {
    long long n = 0;
    for (int r = b.r0; r < b.r1; ++r)
        for (int c = b.c0; c < b.c1; ++c)
            if (gt.at(r, c)) ++n;
    return n;
}

void gather(const GrayMap& m, const BlockRect& b, std::vector<double>& out) {
    out.clear();
    for (int r = b.r0; r < b.r1; ++r)
        for (int c = b.c0; c < b.c1; ++c) out.push_back(m.at(r, c));
}

}  // namespace

void SMeasureParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0,1]");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("lambda must be nonnegative");
    if (!is_power_of_four(k_blocks))
        throw std::invalid_argument("k_blocks must be a power of 4 (4, 16, 64, ...)");
}

double ssim_block(std::span<const double> x, std::span<const double> y) {
    if (x.empty()) throw std::invalid_argument("ssim_block: empty input");
    if (x.size() != y.size()) throw std::invalid_argument("ssim_block: length mismatch");

    const size_t n = x.size();
    const bool x_const = std::all_of(x.begin(), x.end(),
                                     [&](double v) { return v == x.front(); });
    const bool y_const = std::all_of(y.begin(), y.end(),
                                     [&](double v) { return v == y.front(); });
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);

    // Constant signals have exactly zero spread; do not let summation
    // noise pull them off the degenerate branches.
    double vx = 0.0, vy = 0.0, cov = 0.0;
    if (n > 1 && !(x_const && y_const)) {
        for (size_t i = 0; i < n; ++i) {
            const double dx = x[i] - mx;
            const double dy = y[i] - my;
            vx += dx * dx;
            vy += dy * dy;
            cov += dx * dy;
        }
        const double div = static_cast<double>(n - 1);
        vx /= div;
        vy /= div;
        cov /= div;
        if (x_const) { vx = 0.0; cov = 0.0; }
        if (y_const) { vy = 0.0; cov = 0.0; }
    }

    if (vx == 0.0 && vy == 0.0)
        return std::abs(mx - my) <= kConstantMeanTol ? 1.0 : 0.0;

    const double num = 4.0 * mx * my * cov;
    const double den = (mx * mx + my * my) * (vx + vy);
    if (den == 0.0) {
        if (num == 0.0 && std::equal(x.begin(), x.end(), y.begin())) return 1.0;
        return 0.0;
    }
    return std::clamp(num / den, -1.0, 1.0);
}

BlockPartition partition_blocks(const BinMap& gt, int k_blocks, BlockWeighting weighting) {
    if (!is_power_of_four(k_blocks))
        throw std::invalid_argument("k_blocks must be a power of 4 (4, 16, 64, ...)");
    int levels = 0;
    for (int k = k_blocks; k > 1; k /= 4) ++levels;

    std::vector<BlockRect> rects;
    rects.reserve(k_blocks);
    split_recursive(gt, {0, 0, gt.height, gt.width}, levels, rects);

    const long long total_fg = static_cast<long long>(gt.foreground_count());
    const double total_area = static_cast<double>(gt.width) * gt.height;

    BlockPartition part;
    part.blocks.reserve(rects.size());
    const bool by_area = weighting == BlockWeighting::area || total_fg == 0;
    for (const BlockRect& r : rects) {
        double w;
        if (by_area)
            w = static_cast<double>(r.area()) / total_area;
        else
            w = static_cast<double>(fg_in_rect(gt, r)) / static_cast<double>(total_fg);
        part.blocks.push_back({r, w});
    }
    return part;
}

double region_score(const GrayMap& sm, const BinMap& gt, int k_blocks,
                    BlockWeighting weighting) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    const BlockPartition part = partition_blocks(gt, k_blocks, weighting);
    const GrayMap gt_gray = to_gray(gt);

    double score = 0.0;
    std::vector<double> bx, by;
    for (const Block& b : part.blocks) {
        if (b.rect.area() == 0) continue;
        gather(sm, b.rect, bx);
        gather(gt_gray, b.rect, by);
        score += b.weight * ssim_block(bx, by);
    }
    return score;
}

double object_component(std::span<const double> region_values, double lambda) {
    const RegionStats st = region_stats(region_values);
    return 2.0 * st.mean / (st.mean * st.mean + 1.0 + 2.0 * lambda * st.stddev);
}

ObjectScores object_score(const GrayMap& sm, const BinMap& gt, double lambda) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    const size_t n_fg = gt.foreground_count();
    if (n_fg == 0 || n_fg == gt.size())
        throw std::invalid_argument("object_score: GT must contain both classes");

    std::vector<double> fg_vals, bg_vals;
    fg_vals.reserve(n_fg);
    bg_vals.reserve(gt.size() - n_fg);
    for (size_t i = 0; i < gt.values.size(); ++i) {
        if (gt.values[i])
            fg_vals.push_back(sm.values[i]);
        else
            bg_vals.push_back(1.0 - sm.values[i]);
    }

    ObjectScores out;
    out.mu = static_cast<double>(n_fg) / static_cast<double>(gt.size());
    out.o_fg = object_component(fg_vals, lambda);
    out.o_bg = object_component(bg_vals, lambda);
    return out;
}

double structure_measure(const GrayMap& sm, const BinMap& gt, const SMeasureParams& params) {
    require_same_dims(sm.width, sm.height, gt.width, gt.height);
    params.validate();

    const size_t n_fg = gt.foreground_count();
    if (n_fg == 0) return 1.0 - mean_value(sm);
    if (n_fg == gt.size()) return mean_value(sm);

    const double s_o = object_score(sm, gt, params.lambda).combined();
    const double s_r = region_score(sm, gt, params.k_blocks, params.weighting);
    const double s = params.alpha * s_o + (1.0 - params.alpha) * s_r;
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace smeval
