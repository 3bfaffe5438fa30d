#include "smeval/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace smeval {

namespace {

std::string resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_relative()) path = base / path;
    return path.lexically_normal().string();
}

}  // namespace

std::vector<std::string> DatasetManifest::model_ids() const {
    std::vector<std::string> ids;
    if (!images.empty())
        for (const auto& [id, _] : images.front().maps) ids.push_back(id);
    return ids;
}

bool DatasetManifest::has_app_scores() const {
    for (const auto& img : images)
        if (img.app_scores.empty()) return false;
    return !images.empty();
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("manifest is not valid JSON: " + std::string(e.what()));
    }

    const fs::path base = fs::absolute(fs::path(path)).parent_path();
    DatasetManifest m;
    m.name = j.value("name", std::string{});
    if (!j.contains("images") || !j["images"].is_array() || j["images"].empty())
        throw std::runtime_error("manifest needs a nonempty 'images' array");

    std::unordered_set<std::string> seen;
    for (const auto& ji : j["images"]) {
        ManifestImage img;
        img.id = ji.at("id").get<std::string>();
        if (!seen.insert(img.id).second)
            throw std::runtime_error("duplicate image id in manifest: " + img.id);
        img.gt_path = resolve(base, ji.at("gt").get<std::string>());
        for (const auto& [model, p] : ji.at("maps").items())
            img.maps[model] = resolve(base, p.get<std::string>());
        if (img.maps.empty())
            throw std::runtime_error("image " + img.id + " lists no maps");
        if (ji.contains("app_scores"))
            for (const auto& [model, v] : ji["app_scores"].items())
                img.app_scores[model] = v.get<double>();
        m.images.push_back(std::move(img));
    }

    // Model sets must agree everywhere; report every gap at once.
    std::vector<std::string> expected;
    for (const auto& [id, _] : m.images.front().maps) expected.push_back(id);
    std::string gaps;
    for (const auto& img : m.images) {
        std::vector<std::string> got;
        for (const auto& [id, _] : img.maps) got.push_back(id);
        if (got != expected)
            gaps += (gaps.empty() ? "" : "; ") + img.id;
        if (!img.app_scores.empty())
            for (const auto& model : expected)
                if (!img.app_scores.count(model))
                    throw std::runtime_error("image " + img.id +
                                             " lacks an app score for model " + model);
    }
    if (!gaps.empty())
        throw std::runtime_error("model sets differ across images: " + gaps);

    for (const auto& img : m.images) {
        if (!fs::exists(img.gt_path))
            throw std::runtime_error("missing GT file for image " + img.id + ": " +
                                     img.gt_path);
        for (const auto& [model, p] : img.maps)
            if (!fs::exists(p))
                throw std::runtime_error("missing map for image " + img.id + ", model " +
                                         model + ": " + p);
    }
    return m;
}

}  // namespace smeval
