#ifndef SMEVAL_IMAGE_IO_HPP
#define SMEVAL_IMAGE_IO_HPP

#include <string>

#include "smeval/image.hpp"

namespace smeval {

/// Decode a raster image (PNG, PGM/PPM, BMP, JPEG) into a [0,1] gray map.
/// 8-bit grayscale pixels map to p/255 exactly; color inputs are reduced
/// with BT.601 luma (0.299 R + 0.587 G + 0.114 B) before normalization.
/// Throws std::runtime_error for unreadable, unsupported or zero-size files.
GrayMap load_gray_map(const std::string& path);

/// Decode and binarize: foreground iff p/255 >= threshold.
BinMap load_binary_map(const std::string& path, double threshold = 0.5);

/// Quantize to 8 bits (round(v*255)) and encode; format from file extension.
void save_gray_map(const GrayMap& m, const std::string& path);

/// Encode as {0,255} bytes; format from file extension.
void save_binary_map(const BinMap& m, const std::string& path);

}  // namespace smeval

#endif
