#pragma once

#include <utility>
#include <vector>

#include "lesionseg/image.hpp"

namespace lesionseg {

/// Flat binary neighborhood, anchored at its center. Both shapes are
/// point-symmetric, which the duality and adjunction properties rely on.
struct StructuringElement {
    enum class Shape { Disk, Square };

    Shape shape = Shape::Disk;
    int param = 0;  // disk radius, or square side

    // horizontal run half-widths: run[dy + vradius] covers dx in [-run, run]
    int vradius = 0;
    std::vector<int> run_half_width;

    /// disk(r) = { (dx,dy) : dx^2 + dy^2 <= r^2 }
    static StructuringElement disk(int radius);

    /// square(n) = { (dx,dy) : |dx|,|dy| <= floor(n/2) }
    static StructuringElement square(int side);

    int half_width(int dy) const { return run_half_width[dy + vradius]; }

    /// Full offset set (contains (0,0)).
    std::vector<std::pair<int, int>> offsets() const;
};

// Grayscale flat morphology, edge replication policy throughout.
GrayImage erode(const GrayImage& img, const StructuringElement& se);
GrayImage dilate(const GrayImage& img, const StructuringElement& se);
GrayImage open(const GrayImage& img, const StructuringElement& se);
GrayImage close(const GrayImage& img, const StructuringElement& se);

/// img - open(img, se)
GrayImage white_tophat(const GrayImage& img, const StructuringElement& se);
/// close(img, se) - img
GrayImage black_tophat(const GrayImage& img, const StructuringElement& se);

/// dilate - erode, the relief watershed floods.
GrayImage morph_gradient(const GrayImage& img, const StructuringElement& se);

// Binary variants: the {0,255} grayscale embedding, thresholded back.
BinaryMask erode_b(const BinaryMask& mask, const StructuringElement& se);
BinaryMask dilate_b(const BinaryMask& mask, const StructuringElement& se);
BinaryMask open_b(const BinaryMask& mask, const StructuringElement& se);
BinaryMask close_b(const BinaryMask& mask, const StructuringElement& se);

BinaryMask complement(const BinaryMask& mask);

}  // namespace lesionseg
