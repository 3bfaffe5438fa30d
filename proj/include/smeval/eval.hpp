#ifndef SMEVAL_EVAL_HPP
#define SMEVAL_EVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "smeval/manifest.hpp"
#include "smeval/measures.hpp"
#include "smeval/score_matrix.hpp"

namespace smeval {

struct RunConfig {
    std::vector<std::string> measures;  // nonempty subset of known_measures()
    MeasureConfig measure_config;
    double gt_threshold = 0.5;  // binarization of GT files
    uint64_t seed = 0;
    int jobs = 1;

    void validate() const;
};

struct ImageFailure {
    std::string image_id;
    std::string error;
};

/// Batch evaluation over a manifest. A failing image (unreadable file,
/// size mismatch) loses its row in every matrix but never stops the run.
struct EvalResult {
    std::map<std::string, ScoreMatrix> by_measure;       // rows sorted by image id
    std::vector<ImageFailure> failures;                  // sorted by image id
    std::vector<std::pair<std::string, double>> per_image_ms;  // volatile timing
    std::map<std::string, std::map<std::string, double>> model_means()
        const;  // measure -> model -> mean
};

EvalResult evaluate_manifest(const DatasetManifest& manifest, const RunConfig& config);

/// Raw maps for the meta protocols that need pixels, not just scores.
/// Any unreadable or mismatched image throws (meta runs need the full set).
struct LoadedDataset {
    std::vector<std::string> image_ids;
    std::vector<std::string> model_ids;
    std::vector<BinMap> gts;
    std::vector<std::vector<GrayMap>> maps;  // [image][model]
};

LoadedDataset load_dataset(const DatasetManifest& manifest, double gt_threshold = 0.5,
                           int jobs = 1);

}  // namespace smeval

#endif
