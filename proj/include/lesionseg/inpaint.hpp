#pragma once

#include <vector>

#include "lesionseg/image.hpp"

namespace lesionseg {

enum class InpaintMethod {
    Telea,
    Diffusion,
};

/// Fast-marching inpainting. Masked pixels are repainted in order of
/// distance from the mask boundary; each gets a weighted average of already
/// valid pixels within `radius` (weights favor nearby pixels on the same
/// front level). Pixels outside the mask are never modified; a fully masked
/// image is returned unchanged. `fill_order`, when given, receives the
/// row-major indices of the repainted pixels in paint order.
GrayImage inpaint_telea(const GrayImage& img, const BinaryMask& mask,
                        int radius, std::vector<int>* fill_order = nullptr);

/// Harmonic fill: masked pixels start at the mean of their valid 8-neighbors
/// and relax toward the mean of their 4-neighbors by Jacobi sweeps. Pixels
/// outside the mask are never modified; a fully masked image is returned
/// unchanged.
GrayImage inpaint_diffusion(const GrayImage& img, const BinaryMask& mask,
                            int iterations = 300);

/// Color inpainting; the distance field and paint order are computed once
/// from the mask and shared by the three channels.
RgbImage inpaint_rgb(const RgbImage& img, const BinaryMask& mask,
                     InpaintMethod method, int radius,
                     int diffusion_iterations = 300);

}  // namespace lesionseg
