#include "smeval/score_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace smeval {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

size_t ScoreMatrix::image_index(const std::string& id) const {
    for (size_t i = 0; i < image_ids.size(); ++i)
        if (image_ids[i] == id) return i;
    throw std::invalid_argument("unknown image id: " + id);
}

void ScoreMatrix::validate() const {
    if (scores.size() != image_ids.size())
        throw std::invalid_argument("score matrix: row count does not match image ids");
    for (const auto& row : scores)
        if (row.size() != model_ids.size())
            throw std::invalid_argument("score matrix: ragged row");
    std::unordered_set<std::string> seen;
    for (const auto& id : image_ids)
        if (!seen.insert(id).second)
            throw std::invalid_argument("score matrix: duplicate image id " + id);
    for (const auto& id : image_ids)
        if (id.find(',') != std::string::npos)
            throw std::invalid_argument("score matrix: id contains a comma: " + id);
    for (const auto& id : model_ids)
        if (id.find(',') != std::string::npos)
            throw std::invalid_argument("score matrix: id contains a comma: " + id);
}

std::string format_score(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ScoreMatrix load_score_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open score CSV: " + path);

    ScoreMatrix m;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty score CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 2)
        throw std::runtime_error("malformed score CSV header: " + path);
    m.model_ids.assign(header.begin() + 1, header.end());

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected " + std::to_string(header.size()) +
                                     " fields, got " + std::to_string(fields.size()));
        m.image_ids.push_back(fields[0]);
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (size_t i = 1; i < fields.size(); ++i) {
            try {
                size_t pos = 0;
                const double v = std::stod(fields[i], &pos);
                if (pos != fields[i].size() || !std::isfinite(v))
                    throw std::invalid_argument(fields[i]);
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": bad number '" + fields[i] + "'");
            }
        }
        m.scores.push_back(std::move(row));
    }
    m.validate();
    return m;
}

void save_score_csv(const ScoreMatrix& m, const std::string& path) {
    m.validate();
    std::ofstream out(path, std::ios::binary);  // binary: stable newlines
    if (!out) throw std::runtime_error("cannot write score CSV: " + path);
    out << "image_id";
    for (const auto& id : m.model_ids) out << ',' << id;
    out << '\n';
    for (size_t i = 0; i < m.image_ids.size(); ++i) {
        out << m.image_ids[i];
        for (double v : m.scores[i]) out << ',' << format_score(v);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void require_matching_ids(const ScoreMatrix& a, const ScoreMatrix& b) {
    if (a.image_ids != b.image_ids)
        throw std::invalid_argument("score matrices disagree on image ids");
    if (a.model_ids != b.model_ids)
        throw std::invalid_argument("score matrices disagree on model ids");
}

}  // namespace smeval
