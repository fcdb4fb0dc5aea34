#pragma once

#include <string>

#include "lesionseg/image.hpp"

namespace lesionseg {

/// Decodes PNG, binary PPM/PGM (maxval 255) or JPEG. 16-bit PNG sources
/// are scaled to 8 bit; grayscale and palette sources come back as RGB.
RgbImage load_image(const std::string& path);

/// Writes an 8-bit single-channel raster, foreground = 255, background = 0.
/// Format chosen by extension: .png or .pgm.
void save_mask(const BinaryMask& mask, const std::string& path);

/// Reads a mask written by save_mask (any loadable image; >127 = foreground).
BinaryMask load_mask(const std::string& path);

/// Writes a color raster; .png or .ppm by extension.
void save_rgb(const RgbImage& img, const std::string& path);

/// Writes a single-channel raster; .png or .pgm by extension.
void save_gray(const GrayImage& img, const std::string& path);

}  // namespace lesionseg
