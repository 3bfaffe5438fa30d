#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smeval/baselines.hpp"
#include "smeval/eval.hpp"
#include "smeval/image.hpp"
#include "smeval/image_io.hpp"
#include "smeval/measures.hpp"
#include "smeval/meta.hpp"
#include "smeval/morphology.hpp"
#include "smeval/rank.hpp"
#include "smeval/s_measure.hpp"

namespace py = pybind11;
using namespace smeval;

namespace {

GrayMap gray_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<double> vals(a.data(), a.data() + static_cast<size_t>(h) * w);
    return GrayMap(w, h, std::move(vals));
}

BinMap bin_from_array(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    BinMap m(w, h);
    const bool* data = a.data();
    for (size_t i = 0; i < m.size(); ++i) m.values[i] = data[i] ? 1 : 0;
    return m;
}

py::array_t<double> gray_to_array(const GrayMap& m) {
    py::array_t<double> out({m.height, m.width});
    std::copy(m.values.begin(), m.values.end(), out.mutable_data());
    return out;
}

py::array_t<bool> bin_to_array(const BinMap& m) {
    py::array_t<bool> out({m.height, m.width});
    bool* data = out.mutable_data();
    for (size_t i = 0; i < m.size(); ++i) data[i] = m.values[i] != 0;
    return out;
}

SMeasureParams s_params(double alpha, double lambda, int k_blocks, const std::string& weighting) {
    SMeasureParams p;
    p.alpha = alpha;
    p.lambda = lambda;
    p.k_blocks = k_blocks;
    if (weighting == "foreground") p.weighting = BlockWeighting::foreground;
    else if (weighting == "area") p.weighting = BlockWeighting::area;
    else throw std::invalid_argument("weighting must be 'foreground' or 'area'");
    return p;
}

py::array_t<double> curve_to_array(const Curve& c) {
    py::array_t<double> out({c.points.size(), size_t{2}});
    double* data = out.mutable_data();
    for (size_t i = 0; i < c.points.size(); ++i) {
        data[2 * i] = c.points[i].first;
        data[2 * i + 1] = c.points[i].second;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_smeval, m) {
    m.doc() = "Foreground-map evaluation: structure measure, baselines and "
              "meta-measure protocols.";

    m.def(
        "structure_measure",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           double alpha, double lambda, int k_blocks, const std::string& weighting) {
            return structure_measure(gray_from_array(sm), bin_from_array(gt),
                                     s_params(alpha, lambda, k_blocks, weighting));
        },
        py::arg("sm"), py::arg("gt"), py::arg("alpha") = 0.5, py::arg("lambda_") = 0.5,
        py::arg("k_blocks") = 4, py::arg("weighting") = "foreground",
        "Structure measure of a [0,1] prediction against a boolean GT.");

    m.def(
        "region_score",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           int k_blocks, const std::string& weighting) {
            return region_score(gray_from_array(sm), bin_from_array(gt), k_blocks,
                                weighting == "area" ? BlockWeighting::area
                                                    : BlockWeighting::foreground);
        },
        py::arg("sm"), py::arg("gt"), py::arg("k_blocks") = 4,
        py::arg("weighting") = "foreground");

    m.def(
        "object_score",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           double lambda) {
            const ObjectScores s = object_score(gray_from_array(sm), bin_from_array(gt), lambda);
            return py::make_tuple(s.combined(), s.o_fg, s.o_bg, s.mu);
        },
        py::arg("sm"), py::arg("gt"), py::arg("lambda_") = 0.5,
        "Returns (combined, o_fg, o_bg, mu).");

    m.def(
        "ssim_block",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return ssim_block(x, y);
        },
        py::arg("x"), py::arg("y"));

    m.def("object_component",
          [](const std::vector<double>& values, double lambda) {
              return object_component(values, lambda);
          },
          py::arg("values"), py::arg("lambda_") = 0.5);

    m.def(
        "f_beta",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& pred,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           double beta_sq) {
            return f_beta(confusion_counts(bin_from_array(pred), bin_from_array(gt)), beta_sq);
        },
        py::arg("pred"), py::arg("gt"), py::arg("beta_sq") = 1.0);

    m.def(
        "fbw",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           double beta_sq) {
            FbwParams p;
            p.beta_sq = beta_sq;
            return fbw(gray_from_array(sm), bin_from_array(gt), p);
        },
        py::arg("sm"), py::arg("gt"), py::arg("beta_sq") = 1.0);

    m.def(
        "roc_curve",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           int num_thresholds) {
            return curve_to_array(roc_curve(gray_from_array(sm), bin_from_array(gt),
                                            num_thresholds));
        },
        py::arg("sm"), py::arg("gt"), py::arg("num_thresholds") = 256,
        "(FPR, TPR) points, sorted, with (0,0)/(1,1) anchors.");

    m.def(
        "pr_curve",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           int num_thresholds) {
            return curve_to_array(pr_curve(gray_from_array(sm), bin_from_array(gt),
                                           num_thresholds));
        },
        py::arg("sm"), py::arg("gt"), py::arg("num_thresholds") = 256,
        "(recall, precision) points, sorted by recall.");

    m.def(
        "auc",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           int num_thresholds) {
            return auc(roc_curve(gray_from_array(sm), bin_from_array(gt), num_thresholds));
        },
        py::arg("sm"), py::arg("gt"), py::arg("num_thresholds") = 256);

    m.def(
        "average_precision",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sm,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt,
           int num_thresholds, int num_recall_points) {
            return average_precision(
                pr_curve(gray_from_array(sm), bin_from_array(gt), num_thresholds),
                num_recall_points);
        },
        py::arg("sm"), py::arg("gt"), py::arg("num_thresholds") = 256,
        py::arg("num_recall_points") = 11);

    m.def("load_gray_map",
          [](const std::string& path) { return gray_to_array(load_gray_map(path)); },
          py::arg("path"));
    m.def("load_binary_map",
          [](const std::string& path, double threshold) {
              return bin_to_array(load_binary_map(path, threshold));
          },
          py::arg("path"), py::arg("threshold") = 0.5);
    m.def("save_gray_map",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
             const std::string& path) { save_gray_map(gray_from_array(a), path); },
          py::arg("values"), py::arg("path"));
    m.def("save_binary_map",
          [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& a,
             const std::string& path) { save_binary_map(bin_from_array(a), path); },
          py::arg("values"), py::arg("path"));

    m.def("gaussian_baseline_map",
          [](int width, int height, double sigma_frac) {
              return gray_to_array(gaussian_baseline_map(width, height, sigma_frac));
          },
          py::arg("width"), py::arg("height"), py::arg("sigma_frac") = 0.25);

    m.def(
        "perturb_gt",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt, int radius,
           const std::string& mode, uint64_t seed) {
            return bin_to_array(
                perturb_gt(bin_from_array(gt), radius, perturb_mode_from_string(mode), seed));
        },
        py::arg("gt"), py::arg("radius") = 2, py::arg("mode") = "mixed", py::arg("seed") = 0,
        "Morphological GT perturbation with a disk structuring element.");

    m.def("rank_descending",
          [](const std::vector<double>& scores) { return rank_descending(scores); },
          py::arg("scores"), "Ranks by descending score; ties share the average rank.");

    m.def(
        "spearman_rho",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return spearman_rho(a, b);
        },
        py::arg("ranks_a"), py::arg("ranks_b"));

    m.def(
        "foreground_centroid",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& gt) {
            return foreground_centroid(bin_from_array(gt));
        },
        py::arg("gt"), "(row, col) mean of the foreground, image center if empty.");

    m.attr("measures") = known_measures();
}
