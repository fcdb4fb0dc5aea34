#pragma once

#include <utility>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/image.hpp"

namespace lesionseg {

/// 4-connected BFS flood from the seeds; a pixel joins iff its intensity is
/// strictly below max_intensity. Seeds at or above the threshold contribute
/// nothing. Out-of-bounds seeds are an error.
BinaryMask region_grow(const GrayImage& img,
                       const std::vector<std::pair<int, int>>& seeds,
                       int max_intensity);

/// Corner-connected dark border of a dermoscopy frame: a small dilation
/// kills one-pixel-wide dark seams, an opening blocks thin dark routes into
/// the lesion, then the four corners grow over what stays dark.
BinaryMask detect_border_mask(const GrayImage& gray, const PipelineConfig& cfg);

/// Replaces the detected border pixels with border_fill_value; everything
/// else is untouched.
GrayImage fill_borders(const GrayImage& gray, const PipelineConfig& cfg);

/// Full second pipeline: gray conversion, border filling, hair removal,
/// pyramid mean-shift smoothing, OTSU (dark side), closing-then-opening
/// cleanup, largest component. color_mode selects whether the mean shift
/// runs on the gray round-trip or directly on the color image.
BinaryMask segment_method2(const RgbImage& img, const PipelineConfig& cfg);

}  // namespace lesionseg
