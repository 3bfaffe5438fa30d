#include "smeval/eval.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "smeval/image_io.hpp"
#include "smeval/parallel.hpp"

namespace smeval {

void RunConfig::validate() const {
    if (measures.empty())
        throw std::invalid_argument("config: at least one measure must be selected");
    for (const auto& m : measures)
        if (std::find(known_measures().begin(), known_measures().end(), m) ==
            known_measures().end())
            throw std::invalid_argument("config: unknown measure '" + m + "'");
    if (!(gt_threshold >= 0.0 && gt_threshold <= 1.0))
        throw std::invalid_argument("config: gt threshold must lie in [0,1]");
    measure_config.s_params.validate();
    measure_config.fbw_params.validate();
}

std::map<std::string, std::map<std::string, double>> EvalResult::model_means() const {
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& [measure, matrix] : by_measure) {
        for (size_t m = 0; m < matrix.model_count(); ++m) {
            double sum = 0.0;
            for (size_t i = 0; i < matrix.image_count(); ++i) sum += matrix.at(i, m);
            out[measure][matrix.model_ids[m]] =
                matrix.image_count() ? sum / static_cast<double>(matrix.image_count()) : 0.0;
        }
    }
    return out;
}

EvalResult evaluate_manifest(const DatasetManifest& manifest, const RunConfig& config) {
    config.validate();
    const auto model_ids = manifest.model_ids();
    const size_t n_images = manifest.images.size();
    const size_t n_measures = config.measures.size();

    std::vector<MeasureFn> fns;
    fns.reserve(n_measures);
    for (const auto& name : config.measures)
        fns.push_back(make_measure(name, config.measure_config));

    struct Row {
        bool ok = false;
        std::string error;
        std::vector<std::vector<double>> scores;  // [measure][model]
        double ms = 0.0;
    };
    std::vector<Row> rows(n_images);

    parallel_for(n_images, config.jobs, [&](size_t i) {
        const ManifestImage& img = manifest.images[i];
        Row& row = rows[i];
        const auto start = std::chrono::steady_clock::now();
        try {
            const BinMap gt = load_binary_map(img.gt_path, config.gt_threshold);
            row.scores.assign(n_measures, std::vector<double>(model_ids.size(), 0.0));
            for (size_t m = 0; m < model_ids.size(); ++m) {
                const GrayMap sm = load_gray_map(img.maps.at(model_ids[m]));
                require_same_dims(sm.width, sm.height, gt.width, gt.height);
                for (size_t f = 0; f < n_measures; ++f)
                    row.scores[f][m] = fns[f](sm, gt);
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    });

    // Assemble rows sorted by image id so output never depends on scheduling.
    std::vector<size_t> order(n_images);
    for (size_t i = 0; i < n_images; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return manifest.images[a].id < manifest.images[b].id;
    });

    EvalResult result;
    for (size_t f = 0; f < n_measures; ++f) {
        ScoreMatrix matrix;
        matrix.model_ids = model_ids;
        for (size_t i : order) {
            if (!rows[i].ok) continue;
            matrix.image_ids.push_back(manifest.images[i].id);
            matrix.scores.push_back(rows[i].scores[f]);
        }
        result.by_measure[config.measures[f]] = std::move(matrix);
    }
    for (size_t i : order) {
        result.per_image_ms.emplace_back(manifest.images[i].id, rows[i].ms);
        if (!rows[i].ok) result.failures.push_back({manifest.images[i].id, rows[i].error});
    }
    return result;
}

LoadedDataset load_dataset(const DatasetManifest& manifest, double gt_threshold, int jobs) {
    LoadedDataset ds;
    ds.model_ids = manifest.model_ids();
    const size_t n = manifest.images.size();
    ds.image_ids.resize(n);
    ds.gts.resize(n);
    ds.maps.resize(n);
    parallel_for(n, jobs, [&](size_t i) {
        const ManifestImage& img = manifest.images[i];
        ds.image_ids[i] = img.id;
        ds.gts[i] = load_binary_map(img.gt_path, gt_threshold);
        ds.maps[i].reserve(ds.model_ids.size());
        for (const auto& model : ds.model_ids) {
            GrayMap sm = load_gray_map(img.maps.at(model));
            require_same_dims(sm.width, sm.height, ds.gts[i].width, ds.gts[i].height);
            ds.maps[i].push_back(std::move(sm));
        }
    });
    return ds;
}

}  // namespace smeval
