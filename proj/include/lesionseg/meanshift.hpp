#pragma once

#include "lesionseg/image.hpp"

namespace lesionseg {

struct MeanShiftParams {
    int spatial_bandwidth = 21;   // Chebyshev radius of the spatial window
    int color_bandwidth = 40;     // L-infinity radius in color space
    int pyramid_levels = 2;       // extra coarse levels; 0 = single scale
    int max_iterations = 10;
    float convergence_eps = 1.0f;
};

/// Joint-domain mean-shift filtering. Each pixel's (position, color)
/// estimate is moved to the mean of the source pixels inside both bandwidth
/// windows until the shift drops below convergence_eps; the pixel takes the
/// converged color. With pyramid_levels > 0 the filter runs on a box-filtered
/// pyramid and fine levels refilter only the pixels the coarse result
/// represents poorly (color off by more than the bandwidth, plus a 1-pixel
/// guard ring).
RgbImage mean_shift_filter(const RgbImage& img, const MeanShiftParams& p);

}  // namespace lesionseg
