#include "smeval/image_io.hpp"

#include <cmath>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace smeval {

namespace {

cv::Mat decode(const std::string& path) {
    cv::Mat img = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (img.empty())
        throw std::runtime_error("cannot decode image: " + path);
    if (img.rows < 1 || img.cols < 1)
        throw std::runtime_error("zero-size image: " + path);
    return img;
}

double scale_for_depth(int depth) {
    switch (depth) {
        case CV_8U: return 255.0;
        case CV_16U: return 65535.0;
        default: throw std::runtime_error("unsupported pixel depth (expected 8- or 16-bit)");
    }
}

template <typename T>
void fill_values(const cv::Mat& img, GrayMap& out, double scale) {
    const int ch = img.channels();
    for (int r = 0; r < img.rows; ++r) {
        const T* row = img.ptr<T>(r);
        for (int c = 0; c < img.cols; ++c) {
            double v;
            if (ch == 1) {
                v = static_cast<double>(row[c]);
            } else {
                // OpenCV stores BGR(A); alpha is ignored.
                const double b = row[c * ch + 0];
                const double g = row[c * ch + 1];
                const double rr = row[c * ch + 2];
                v = 0.299 * rr + 0.587 * g + 0.114 * b;
            }
            out.at(r, c) = v / scale;
        }
    }
}

}  // namespace

GrayMap load_gray_map(const std::string& path) {
    cv::Mat img = decode(path);
    const int ch = img.channels();
    if (ch != 1 && ch != 3 && ch != 4)
        throw std::runtime_error("unsupported channel count: " + std::to_string(ch));
    const double scale = scale_for_depth(img.depth());
    GrayMap out(img.cols, img.rows);
    if (img.depth() == CV_8U)
        fill_values<uint8_t>(img, out, scale);
    else
        fill_values<uint16_t>(img, out, scale);
    // Guard against luma rounding drifting out of range.
    for (double& v : out.values) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
    return out;
}

BinMap load_binary_map(const std::string& path, double threshold) {
    GrayMap g = load_gray_map(path);
    return threshold_map(g, threshold);
}

void save_gray_map(const GrayMap& m, const std::string& path) {
    cv::Mat img(m.height, m.width, CV_8UC1);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c)
            img.at<uint8_t>(r, c) = static_cast<uint8_t>(std::lround(m.at(r, c) * 255.0));
    if (!cv::imwrite(path, img))
        throw std::runtime_error("cannot write image: " + path);
}

void save_binary_map(const BinMap& m, const std::string& path) {
    cv::Mat img(m.height, m.width, CV_8UC1);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c)
            img.at<uint8_t>(r, c) = m.at(r, c) ? 255 : 0;
    if (!cv::imwrite(path, img))
        throw std::runtime_error("cannot write image: " + path);
}

}  // namespace smeval
