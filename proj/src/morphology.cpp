#include "smeval/morphology.hpp"

#include <deque>
#include <stdexcept>

#include "smeval/rng.hpp"

namespace smeval {

namespace {

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    if (radius < 1) throw std::invalid_argument("structuring element radius must be >= 1");
    std::vector<std::pair<int, int>> off;
    for (int dr = -radius; dr <= radius; ++dr)
        for (int dc = -radius; dc <= radius; ++dc)
            if (dr * dr + dc * dc <= radius * radius) off.emplace_back(dr, dc);
    return off;
}

BinMap apply(const BinMap& m, int radius, bool dilating) {
    const auto off = disk_offsets(radius);
    BinMap out(m.width, m.height);
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            bool hit = dilating ? false : true;
            for (const auto& [dr, dc] : off) {
                const int rr = r + dr, cc = c + dc;
                // Outside the image counts as background.
                const bool v = rr >= 0 && rr < m.height && cc >= 0 && cc < m.width &&
                               m.at(rr, cc);
                if (dilating) {
                    if (v) { hit = true; break; }
                } else {
                    if (!v) { hit = false; break; }
                }
            }
            out.set(r, c, hit);
        }
    }
    return out;
}

}  // namespace

PerturbMode perturb_mode_from_string(const std::string& s) {
    if (s == "dilate") return PerturbMode::dilate;
    if (s == "erode") return PerturbMode::erode;
    if (s == "open") return PerturbMode::open;
    if (s == "close") return PerturbMode::close;
    if (s == "mixed") return PerturbMode::mixed;
    throw std::invalid_argument("unknown perturbation mode: " + s);
}

std::string to_string(PerturbMode m) {
    switch (m) {
        case PerturbMode::dilate: return "dilate";
        case PerturbMode::erode: return "erode";
        case PerturbMode::open: return "open";
        case PerturbMode::close: return "close";
        case PerturbMode::mixed: return "mixed";
    }
    return "?";
}

BinMap dilate(const BinMap& m, int radius) { return apply(m, radius, true); }
BinMap erode(const BinMap& m, int radius) { return apply(m, radius, false); }
BinMap morph_open(const BinMap& m, int radius) { return dilate(erode(m, radius), radius); }
BinMap morph_close(const BinMap& m, int radius) { return erode(dilate(m, radius), radius); }

int label_components(const BinMap& m, std::vector<int>& labels) {
    labels.assign(m.size(), 0);
    int next = 0;
    std::deque<std::pair<int, int>> queue;
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) {
            const size_t i = static_cast<size_t>(r) * m.width + c;
            if (!m.values[i] || labels[i] != 0) continue;
            ++next;
            labels[i] = next;
            queue.emplace_back(r, c);
            while (!queue.empty()) {
                const auto [qr, qc] = queue.front();
                queue.pop_front();
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int rr = qr + dr, cc = qc + dc;
                        if (rr < 0 || rr >= m.height || cc < 0 || cc >= m.width) continue;
                        const size_t j = static_cast<size_t>(rr) * m.width + cc;
                        if (m.values[j] && labels[j] == 0) {
                            labels[j] = next;
                            queue.emplace_back(rr, cc);
                        }
                    }
                }
            }
        }
    }
    return next;
}

BinMap perturb_gt(const BinMap& gt, int radius, PerturbMode mode, uint64_t seed) {
    if (radius < 1) throw std::invalid_argument("perturb_gt: radius must be >= 1");
    switch (mode) {
        case PerturbMode::dilate: return dilate(gt, radius);
        case PerturbMode::erode: return erode(gt, radius);
        case PerturbMode::open: return morph_open(gt, radius);
        case PerturbMode::close: return morph_close(gt, radius);
        case PerturbMode::mixed: break;
    }

    std::vector<int> labels;
    const int count = label_components(gt, labels);
    if (count == 0) return gt;

    auto rng = derive_stream(seed, 0x6d69786564ULL);  // stream tag for "mixed"
    std::vector<bool> dilate_component(count + 1);
    for (int k = 1; k <= count; ++k) dilate_component[k] = (rng() & 1) != 0;

    BinMap out(gt.width, gt.height);
    for (int k = 1; k <= count; ++k) {
        BinMap comp(gt.width, gt.height);
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == k) comp.values[i] = 1;
        const BinMap changed = dilate_component[k] ? dilate(comp, radius)
                                                   : erode(comp, radius);
        for (size_t i = 0; i < out.values.size(); ++i)
            if (changed.values[i]) out.values[i] = 1;
    }
    return out;
}

uint64_t structure_change_magnitude(const BinMap& gt, const BinMap& perturbed,
                                    int erode_radius) {
    require_same_dims(gt.width, gt.height, perturbed.width, perturbed.height);
    BinMap diff(gt.width, gt.height);
    for (size_t i = 0; i < gt.values.size(); ++i)
        diff.values[i] = gt.values[i] != perturbed.values[i] ? 1 : 0;
    const BinMap corroded = erode(diff, erode_radius);
    return corroded.foreground_count();
}

}  // namespace smeval
