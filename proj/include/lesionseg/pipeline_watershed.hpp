#pragma once

#include "lesionseg/config.hpp"
#include "lesionseg/image.hpp"

namespace lesionseg {

/// Seed regions for the watershed. Foreground and background never overlap;
/// unknown is exactly the rest. The marker field is 1 on sure background,
/// 2..k+1 on the sure-foreground components, 0 on unknown.
struct MarkerSet {
    BinaryMask sure_foreground;
    BinaryMask sure_background;
    BinaryMask unknown;
    LabelMap markers;
};

/// Thin dark (or bright, per polarity) structure detector: per-channel
/// top-hat against disk(tophat_radius), max across channels, fixed
/// binarization at hair_threshold, then closing and a small dilation to
/// bridge gaps and cover antialiased stroke edges.
BinaryMask build_hair_mask(const RgbImage& img, const PipelineConfig& cfg);

/// Derives watershed seeds from a thresholded lesion candidate: small
/// open/close cleanup, background = complement of a wide dilation,
/// foreground = the distance-transform core (d > fg_dist_fraction * max).
/// Throws NoLesionError when the cleaned candidate is empty.
MarkerSet create_markers(const BinaryMask& lesion_binary, const PipelineConfig& cfg);

/// Meyer-style priority flood of `gradient` from the nonzero marker pixels,
/// 4-connected, lowest gradient first, FIFO among equal values. A popped
/// pixel takes its neighbors' label when all positively labeled neighbors
/// agree, else -1. Terminates with no 0 pixels; marked pixels keep their
/// input labels. Requires matching dimensions and at least two distinct
/// positive marker labels.
LabelMap watershed(const GrayImage& gradient, const LabelMap& markers);

/// Full first pipeline: median denoise, hair removal by top-hat mask +
/// inpainting, OTSU lesion candidate (dark side), marker-controlled
/// watershed on the morphological gradient, largest component of the
/// foreground-marked regions (watershed ridges count as foreground).
BinaryMask segment_method1(const RgbImage& img, const PipelineConfig& cfg);

}  // namespace lesionseg
