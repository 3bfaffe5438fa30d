#include "smeval/measures.hpp"

#include <stdexcept>

namespace smeval {

const std::vector<std::string>& known_measures() {
    static const std::vector<std::string> names = {"s", "fbeta", "fbw", "ap", "auc"};
    return names;
}

MeasureFn make_measure(const std::string& name, const MeasureConfig& cfg) {
    if (name == "s") {
        return [p = cfg.s_params](const GrayMap& sm, const BinMap& gt) {
            return structure_measure(sm, gt, p);
        };
    }
    if (name == "fbeta") {
        return [b = cfg.fbeta_beta_sq, t = cfg.fbeta_threshold](const GrayMap& sm,
                                                                const BinMap& gt) {
            return f_beta(confusion_counts(threshold_map(sm, t), gt), b);
        };
    }
    if (name == "fbw") {
        return [p = cfg.fbw_params](const GrayMap& sm, const BinMap& gt) {
            return fbw(sm, gt, p);
        };
    }
    if (name == "ap") {
        return [n = cfg.num_thresholds, g = cfg.ap_recall_points](const GrayMap& sm,
                                                                  const BinMap& gt) {
            return average_precision(pr_curve(sm, gt, n), g);
        };
    }
    if (name == "auc") {
        return [n = cfg.num_thresholds](const GrayMap& sm, const BinMap& gt) {
            return auc(roc_curve(sm, gt, n));
        };
    }
    throw std::invalid_argument("unknown measure '" + name + "' (expected s, fbeta, fbw, ap, auc)");
}

}  // namespace smeval
