#ifndef SMEVAL_SCORE_MATRIX_HPP
#define SMEVAL_SCORE_MATRIX_HPP

#include <string>
#include <vector>

namespace smeval {

/// images x models score table. CSV form: header `image_id,<model...>`,
/// one row per image, scores at full (17 significant digit) precision.
struct ScoreMatrix {
    std::vector<std::string> image_ids;
    std::vector<std::string> model_ids;
    std::vector<std::vector<double>> scores;  // [image][model]

    size_t image_count() const { return image_ids.size(); }
    size_t model_count() const { return model_ids.size(); }

    double at(size_t image, size_t model) const { return scores[image][model]; }
    const std::vector<double>& row(size_t image) const { return scores[image]; }

    /// Index of an image id, or throws.
    size_t image_index(const std::string& id) const;

    void validate() const;
};

std::string format_score(double v);  // %.17g

ScoreMatrix load_score_csv(const std::string& path);
void save_score_csv(const ScoreMatrix& m, const std::string& path);

/// Throws unless both matrices list identical image and model ids.
void require_matching_ids(const ScoreMatrix& a, const ScoreMatrix& b);

}  // namespace smeval

#endif
