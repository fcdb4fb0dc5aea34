#pragma once

#include "lesionseg/image.hpp"

namespace lesionseg {

/// Median of the (2r+1)x(2r+1) window at each pixel, edge replication.
/// radius 0 is the identity.
GrayImage median_filter_gray(const GrayImage& img, int radius);

/// Per-channel median filtering (split / filter / merge).
RgbImage median_filter_rgb(const RgbImage& img, int radius);

}  // namespace lesionseg
