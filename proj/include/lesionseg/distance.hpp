#pragma once

#include <cstdint>
#include <vector>

#include "lesionseg/image.hpp"

namespace lesionseg {

/// Squared Euclidean distance from each pixel to the nearest background
/// pixel, exact in integer space. Row-major, same dimensions as the mask.
/// An all-foreground mask gets the sentinel (width+height)^2 everywhere.
std::vector<std::int64_t> edt_squared(const BinaryMask& mask);

/// Euclidean distance transform; background pixels map to 0. All-foreground
/// masks map every pixel to the sentinel width+height.
FloatImage edt(const BinaryMask& mask);

}  // namespace lesionseg
