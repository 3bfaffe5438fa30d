#ifndef SMEVAL_MORPHOLOGY_HPP
#define SMEVAL_MORPHOLOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "smeval/image.hpp"

namespace smeval {

enum class PerturbMode { dilate, erode, open, close, mixed };

PerturbMode perturb_mode_from_string(const std::string& s);
std::string to_string(PerturbMode m);

BinMap dilate(const BinMap& m, int radius);
BinMap erode(const BinMap& m, int radius);
BinMap morph_open(const BinMap& m, int radius);
BinMap morph_close(const BinMap& m, int radius);

/// 8-connected foreground components, labeled in scan order starting at 1;
/// background pixels get 0. Returns the component count.
int label_components(const BinMap& m, std::vector<int>& labels);

/// Morphological GT perturbation with a disk structuring element. `mixed`
/// dilates or erodes each connected component independently, chosen by a
/// seeded coin per component. radius >= 1.
BinMap perturb_gt(const BinMap& gt, int radius, PerturbMode mode, uint64_t seed);

/// Size of the structure change between a GT and its perturbed version:
/// foreground count of the eroded difference map. Small boundary wiggles
/// erode away; genuine topology changes survive.
uint64_t structure_change_magnitude(const BinMap& gt, const BinMap& perturbed,
                                    int erode_radius = 1);

}  // namespace smeval

#endif
