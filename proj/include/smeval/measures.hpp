#ifndef SMEVAL_MEASURES_HPP
#define SMEVAL_MEASURES_HPP

#include <functional>
#include <string>
#include <vector>

#include "smeval/baselines.hpp"
#include "smeval/image.hpp"
#include "smeval/s_measure.hpp"

namespace smeval {

using MeasureFn = std::function<double(const GrayMap& sm, const BinMap& gt)>;

struct MeasureConfig {
    SMeasureParams s_params;
    FbwParams fbw_params;
    double fbeta_beta_sq = 1.0;
    double fbeta_threshold = 0.5;  // prediction binarization for fbeta
    int num_thresholds = 256;
    int ap_recall_points = 11;
};

/// Names accepted everywhere a measure is selected: s, fbeta, fbw, ap, auc.
const std::vector<std::string>& known_measures();

MeasureFn make_measure(const std::string& name, const MeasureConfig& cfg = {});

}  // namespace smeval

#endif
