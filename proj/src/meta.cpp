#include "smeval/meta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smeval/parallel.hpp"
#include "smeval/rank.hpp"
#include "smeval/rng.hpp"

namespace smeval {

namespace {

double one_minus_rho(const std::vector<double>& scores_a, const std::vector<double>& scores_b,
                     bool* warn) {
    const auto ra = rank_descending(scores_a);
    const auto rb = rank_descending(scores_b);
    if (ra == rb) {
        // Identical rankings agree perfectly, even when every model is
        // tied (where the correlation itself is undefined). Constant
        // vectors still get flagged.
        if (warn) *warn = std::all_of(ra.begin(), ra.end(),
                                      [&](double r) { return r == ra.front(); });
        return 0.0;
    }
    return 1.0 - spearman_rho(ra, rb, warn);
}

}  // namespace

MetaResult mm1_application_ranking(const ScoreMatrix& measure_scores,
                                   const ScoreMatrix& application_scores) {
    require_matching_ids(measure_scores, application_scores);
    if (measure_scores.image_count() == 0)
        throw std::invalid_argument("mm1: empty score matrix");
    if (measure_scores.model_count() < 2)
        throw std::invalid_argument("mm1 needs at least 2 models to rank");

    MetaResult res;
    res.mm_id = 1;
    double sum = 0.0;
    size_t degenerate = 0;
    for (size_t i = 0; i < measure_scores.image_count(); ++i) {
        bool warn = false;
        const double v = one_minus_rho(measure_scores.row(i), application_scores.row(i), &warn);
        res.per_image.push_back({measure_scores.image_ids[i], v, 0.0, warn});
        if (warn) ++degenerate;
        sum += v;
    }
    res.value = sum / static_cast<double>(measure_scores.image_count());
    res.extras["degenerate_rank_images"] = static_cast<double>(degenerate);
    return res;
}

GrayMap gaussian_baseline_map(int width, int height, double sigma_frac) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("gaussian_baseline_map: dimensions must be positive");
    if (!(sigma_frac > 0.0))
        throw std::invalid_argument("gaussian_baseline_map: sigma_frac must be positive");
    const double rc = (height - 1) / 2.0;
    const double cc = (width - 1) / 2.0;
    const double sigma = sigma_frac * std::min(width, height);
    GrayMap out(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double dr = r - rc;
            const double dc = c - cc;
            out.at(r, c) = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        }
    }
    return out;
}

MetaResult mm2_generic_vs_sota(const ScoreMatrix& sota_scores,
                               const std::vector<double>& generic_scores) {
    if (generic_scores.size() != sota_scores.image_count())
        throw std::invalid_argument("mm2: generic score count does not match image ids");
    if (sota_scores.image_count() == 0)
        throw std::invalid_argument("mm2: empty score matrix");
    if (sota_scores.model_count() == 0)
        throw std::invalid_argument("mm2: no models in score matrix");

    MetaResult res;
    res.mm_id = 2;
    uint64_t violations = 0;
    for (size_t i = 0; i < sota_scores.image_count(); ++i) {
        const auto& row = sota_scores.row(i);
        const double mean = std::accumulate(row.begin(), row.end(), 0.0) /
                            static_cast<double>(row.size());
        const bool generic_wins = generic_scores[i] > mean;
        if (generic_wins) ++violations;
        res.per_image.push_back({sota_scores.image_ids[i], generic_wins ? 1.0 : 0.0});
    }
    res.value = static_cast<double>(violations);
    res.extras["percent"] =
        100.0 * static_cast<double>(violations) / static_cast<double>(sota_scores.image_count());
    return res;
}

MetaResult mm3_gt_switch_pooled(const MeasureFn& measure, const std::vector<GrayMap>& sms,
                                const std::vector<size_t>& gt_of_sm,
                                const std::vector<BinMap>& gts,
                                const std::vector<std::string>& map_ids,
                                const Mm3Params& params) {
    const size_t n = sms.size();
    if (gt_of_sm.size() != n || map_ids.size() != n)
        throw std::invalid_argument("mm3: sms, gt indices and ids must align");
    if (gts.size() < 2) throw std::invalid_argument("mm3 needs at least 2 images");
    for (size_t g : gt_of_sm)
        if (g >= gts.size()) throw std::invalid_argument("mm3: gt index out of range");
    if (params.switches_per_image < 1)
        throw std::invalid_argument("mm3: switches_per_image must be >= 1");

    std::vector<double> own(n);
    parallel_for(n, params.jobs,
                 [&](size_t i) { own[i] = measure(sms[i], gts[gt_of_sm[i]]); });

    // Good set: the measure's own best maps.
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return own[a] > own[b]; });
    std::vector<size_t> good;
    if (params.selection == GoodSelection::fraction) {
        const auto k = static_cast<size_t>(std::llround(params.good_fraction * n));
        good.assign(order.begin(), order.begin() + std::min(k, n));
    } else {
        for (size_t i : order)
            if (own[i] >= params.good_cutoff) good.push_back(i);
    }
    if (good.empty()) throw std::invalid_argument("mm3: the good set is empty");

    struct Tally {
        uint64_t trials = 0, errors = 0, ties = 0, excluded = 0;
    };
    std::vector<Tally> tallies(good.size());

    parallel_for(good.size(), params.jobs, [&](size_t g) {
        const size_t i = good[g];
        std::vector<size_t> candidates;
        candidates.reserve(gts.size() - 1);
        uint64_t excluded = 0;
        for (size_t j = 0; j < gts.size(); ++j) {
            if (j == gt_of_sm[i]) continue;
            if (gts[j].width == sms[i].width && gts[j].height == sms[i].height)
                candidates.push_back(j);
            else
                ++excluded;
        }
        auto rng = derive_stream(params.seed, i);
        const auto chosen = sample_without_replacement(
            candidates, static_cast<size_t>(params.switches_per_image), rng);
        Tally t;
        t.excluded = excluded;
        for (size_t j : chosen) {
            const double wrong = measure(sms[i], gts[j]);
            ++t.trials;
            if (wrong > own[i]) ++t.errors;
            else if (wrong == own[i]) ++t.ties;
        }
        tallies[g] = t;
    });

    MetaResult res;
    res.mm_id = 3;
    res.seed = params.seed;
    uint64_t trials = 0, errors = 0, ties = 0, excluded = 0;
    for (size_t g = 0; g < good.size(); ++g) {
        const Tally& t = tallies[g];
        trials += t.trials;
        errors += t.errors;
        ties += t.ties;
        excluded += t.excluded;
        res.per_image.push_back({map_ids[good[g]],
                                 t.trials ? 100.0 * t.errors / t.trials : 0.0,
                                 static_cast<double>(t.ties)});
    }
    if (trials == 0)
        throw std::invalid_argument(
            "mm3: no valid switch trials (" + std::to_string(excluded) +
            " candidate GTs excluded for size mismatch; switches need at least two "
            "images sharing dimensions)");
    res.value = 100.0 * static_cast<double>(errors) / static_cast<double>(trials);
    res.extras["trials"] = static_cast<double>(trials);
    res.extras["errors"] = static_cast<double>(errors);
    res.extras["ties"] = static_cast<double>(ties);
    res.extras["tie_pct"] = 100.0 * static_cast<double>(ties) / static_cast<double>(trials);
    res.extras["excluded"] = static_cast<double>(excluded);
    res.extras["good_count"] = static_cast<double>(good.size());
    return res;
}

MetaResult mm3_gt_switch(const MeasureFn& measure, const std::vector<GrayMap>& sms,
                         const std::vector<BinMap>& gts,
                         const std::vector<std::string>& image_ids, const Mm3Params& params) {
    if (gts.size() != sms.size())
        throw std::invalid_argument("mm3: sms and gts must align");
    std::vector<size_t> identity(sms.size());
    std::iota(identity.begin(), identity.end(), size_t{0});
    return mm3_gt_switch_pooled(measure, sms, identity, gts, image_ids, params);
}

MetaResult mm4_annotation_robustness(const MeasureFn& measure,
                                     const std::vector<std::vector<GrayMap>>& maps,
                                     const std::vector<BinMap>& gts,
                                     const std::vector<std::string>& image_ids,
                                     const Mm4Params& params) {
    const size_t n = maps.size();
    if (gts.size() != n || image_ids.size() != n)
        throw std::invalid_argument("mm4: maps, gts and ids must align");
    if (n == 0) throw std::invalid_argument("mm4: empty dataset");
    for (const auto& row : maps)
        if (row.size() < 2)
            throw std::invalid_argument("mm4 needs at least 2 models per image");

    std::vector<PerImageEntry> entries(n);
    parallel_for(n, params.jobs, [&](size_t i) {
        const BinMap perturbed =
            perturb_gt(gts[i], params.radius, params.mode, derive_seed(params.seed, i));
        std::vector<double> before, after;
        before.reserve(maps[i].size());
        after.reserve(maps[i].size());
        for (const GrayMap& sm : maps[i]) {
            before.push_back(measure(sm, gts[i]));
            after.push_back(measure(sm, perturbed));
        }
        bool warn = false;
        const double v = one_minus_rho(before, after, &warn);
        const auto magnitude =
            structure_change_magnitude(gts[i], perturbed, params.corrode_radius);
        entries[i] = {image_ids[i], v, static_cast<double>(magnitude), warn};
    });

    MetaResult res;
    res.mm_id = 4;
    res.seed = params.seed;
    res.per_image = std::move(entries);
    double sum = 0.0;
    size_t degenerate = 0;
    for (const auto& e : res.per_image) {
        sum += e.value;
        if (e.warning) ++degenerate;
    }
    res.value = sum / static_cast<double>(n);
    res.extras["degenerate_rank_images"] = static_cast<double>(degenerate);
    return res;
}

MetaResult mm5_rank_distance(const ScoreMatrix& scores_a, const ScoreMatrix& scores_b) {
    require_matching_ids(scores_a, scores_b);
    if (scores_a.image_count() == 0)
        throw std::invalid_argument("mm5: empty score matrix");
    if (scores_a.model_count() < 2)
        throw std::invalid_argument("mm5 needs at least 2 models");

    MetaResult res;
    res.mm_id = 5;
    double sum = 0.0;
    for (size_t i = 0; i < scores_a.image_count(); ++i) {
        const auto& row_a = scores_a.row(i);
        const size_t top_a = static_cast<size_t>(
            std::max_element(row_a.begin(), row_a.end()) - row_a.begin());
        const auto ranks_b = rank_descending(scores_b.row(i));
        const double distance = ranks_b[top_a] - 1.0;
        res.per_image.push_back({scores_a.image_ids[i], distance});
        res.histogram[std::llround(distance)] += 1;
        sum += distance;
    }
    res.value = sum / static_cast<double>(scores_a.image_count());
    uint64_t candidates = 0;
    for (const auto& e : res.per_image)
        if (e.value > 0.0) ++candidates;
    res.extras["candidates"] = static_cast<double>(candidates);
    return res;
}

std::vector<StudyPair> select_study_pairs(const MetaResult& mm5_result,
                                          const ScoreMatrix& scores_a,
                                          const ScoreMatrix& scores_b, size_t max_pairs,
                                          double min_distance, uint64_t seed) {
    if (mm5_result.mm_id != 5)
        throw std::invalid_argument("select_study_pairs expects an MM5 result");
    require_matching_ids(scores_a, scores_b);

    std::vector<size_t> qualifying;
    for (const auto& e : mm5_result.per_image)
        if (e.value >= min_distance)
            qualifying.push_back(scores_a.image_index(e.image_id));
    if (qualifying.empty())
        throw std::invalid_argument("select_study_pairs: no qualifying images");

    auto rng = derive_stream(seed, 0x7061697273ULL);  // stream tag for pair sampling
    auto chosen = sample_without_replacement(qualifying, max_pairs, rng);
    std::sort(chosen.begin(), chosen.end());

    std::vector<StudyPair> pairs;
    pairs.reserve(chosen.size());
    for (size_t i : chosen) {
        const auto& row_a = scores_a.row(i);
        const auto& row_b = scores_b.row(i);
        const size_t top_a = static_cast<size_t>(
            std::max_element(row_a.begin(), row_a.end()) - row_a.begin());
        const size_t top_b = static_cast<size_t>(
            std::max_element(row_b.begin(), row_b.end()) - row_b.begin());
        StudyPair p;
        p.image_id = scores_a.image_ids[i];
        p.model_a = scores_a.model_ids[top_a];
        p.model_b = scores_b.model_ids[top_b];
        for (const auto& e : mm5_result.per_image)
            if (e.image_id == p.image_id) p.distance = e.value;
        pairs.push_back(std::move(p));
    }
    return pairs;
}

}  // namespace smeval
