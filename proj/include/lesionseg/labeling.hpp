#pragma once

#include <utility>

#include "lesionseg/image.hpp"

namespace lesionseg {

/// 8-connected components of the foreground. Labels are 1..k in the order
/// the components are first reached by a raster scan; background stays 0.
/// Returns the label map and k.
std::pair<LabelMap, int> connected_components(const BinaryMask& mask);

/// Keeps only the largest foreground component (ties break toward the
/// component discovered first). An empty mask stays empty.
BinaryMask largest_component(const BinaryMask& mask);

}  // namespace lesionseg
