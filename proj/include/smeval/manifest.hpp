#ifndef SMEVAL_MANIFEST_HPP
#define SMEVAL_MANIFEST_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smeval {

struct ManifestImage {
    std::string id;
    std::string gt_path;                         // absolute after loading
    std::map<std::string, std::string> maps;     // model id -> map path
    std::map<std::string, double> app_scores;    // optional, model id -> score
};

/// Declarative dataset listing. JSON layout:
///   {"name": ..., "images": [{"id", "gt", "maps": {...},
///                             "app_scores": {...}?}, ...]}
/// Relative paths resolve against the manifest's directory.
struct DatasetManifest {
    std::string name;
    std::vector<ManifestImage> images;

    std::vector<std::string> model_ids() const;  // shared across images
    bool has_app_scores() const;
};

/// Parse and validate: unique image ids, identical model sets everywhere,
/// every referenced file present. Violations throw with the offending ids.
DatasetManifest load_manifest(const std::string& path);

}  // namespace smeval

#endif
