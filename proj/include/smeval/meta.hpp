#ifndef SMEVAL_META_HPP
#define SMEVAL_META_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smeval/image.hpp"
#include "smeval/measures.hpp"
#include "smeval/morphology.hpp"
#include "smeval/score_matrix.hpp"

namespace smeval {

/// One image's contribution to a meta-measure. `aux` is protocol-specific:
/// tie count for MM3 trials, structure-change magnitude for MM4, unused
/// otherwise. `warning` marks degenerate rank vectors (all models tied).
struct PerImageEntry {
    std::string image_id;
    double value = 0.0;
    double aux = 0.0;
    bool warning = false;
};

/// Result of one meta-measure run. `value` carries the protocol's headline
/// number: mean 1-rho for MM1/MM4, the violation count for MM2, the error
/// percentage for MM3, the mean rank distance for MM5. `extras` holds the
/// protocol's secondary scalars (percentages, trial counts, tie rates).
struct MetaResult {
    int mm_id = 0;
    double value = 0.0;
    uint64_t seed = 0;
    std::vector<PerImageEntry> per_image;
    std::map<std::string, double> extras;
    std::map<long long, uint64_t> histogram;  // MM5 rank-distance counts
};

/// MM1: per image, 1 - Spearman rho between the measure's model ranking
/// and the application's; mean over images. Lower is better. Matrices must
/// share image and model ids.
MetaResult mm1_application_ranking(const ScoreMatrix& measure_scores,
                                   const ScoreMatrix& application_scores);

/// Content-blind centered Gaussian, sigma = sigma_frac * min(w, h), peak 1
/// at the exact center.
GrayMap gaussian_baseline_map(int width, int height, double sigma_frac = 0.25);

/// MM2: number of images whose generic-map score beats the mean score of
/// the state-of-the-art models. generic_scores aligns with sota image ids.
MetaResult mm2_generic_vs_sota(const ScoreMatrix& sota_scores,
                               const std::vector<double>& generic_scores);

enum class GoodSelection {
    fraction,  // top fraction of maps by the measure's own score
    cutoff,    // absolute score threshold
};

struct Mm3Params {
    int switches_per_image = 100;
    double good_fraction = 0.418;
    GoodSelection selection = GoodSelection::fraction;
    double good_cutoff = 0.5;
    uint64_t seed = 0;
    int jobs = 1;
};

/// MM3: percentage of (good map, wrong GT) trials where the measure scored
/// the wrong GT strictly higher than the right one. Ties are not errors
/// but are tallied in extras["tie_pct"], since a measure that ties every
/// switch is degenerate, not robust. Wrong GTs whose size differs from the
/// map are excluded from sampling and counted in extras["excluded"].
MetaResult mm3_gt_switch(const MeasureFn& measure, const std::vector<GrayMap>& sms,
                         const std::vector<BinMap>& gts,
                         const std::vector<std::string>& image_ids,
                         const Mm3Params& params);

/// Pooled MM3 form: maps may outnumber the distinct GTs (several models per
/// image). gt_of_sm[k] names map k's correct GT; switch candidates come
/// from the other GTs.
MetaResult mm3_gt_switch_pooled(const MeasureFn& measure, const std::vector<GrayMap>& sms,
                                const std::vector<size_t>& gt_of_sm,
                                const std::vector<BinMap>& gts,
                                const std::vector<std::string>& map_ids,
                                const Mm3Params& params);

struct Mm4Params {
    int radius = 2;
    PerturbMode mode = PerturbMode::mixed;
    int corrode_radius = 1;  // erosion radius for the structure-change magnitude
    uint64_t seed = 0;
    int jobs = 1;
};

/// MM4: per image, 1 - Spearman rho between model rankings under the
/// original and a morphologically perturbed GT; mean over images. Each
/// entry's aux reports the structure-change magnitude so results can be
/// stratified by how much the perturbation really altered the object.
MetaResult mm4_annotation_robustness(const MeasureFn& measure,
                                     const std::vector<std::vector<GrayMap>>& maps,
                                     const std::vector<BinMap>& gts,
                                     const std::vector<std::string>& image_ids,
                                     const Mm4Params& params);

/// MM5: for each image, take measure A's top-ranked model (smallest index
/// on ties) and report how far from rank 1 measure B places it. `value` is
/// the mean distance; `histogram` buckets the distances.
MetaResult mm5_rank_distance(const ScoreMatrix& scores_a, const ScoreMatrix& scores_b);

struct StudyPair {
    std::string image_id;
    std::string model_a;  // measure A's top choice
    std::string model_b;  // measure B's top choice
    double distance = 0.0;
};

/// Deterministic sample of images whose rank distance reaches
/// min_distance, paired with each measure's top map. Throws when nothing
/// qualifies.
std::vector<StudyPair> select_study_pairs(const MetaResult& mm5_result,
                                          const ScoreMatrix& scores_a,
                                          const ScoreMatrix& scores_b, size_t max_pairs,
                                          double min_distance, uint64_t seed);

}  // namespace smeval

#endif
