#include "lesionseg/meanshift.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lesionseg/morphology.hpp"

namespace lesionseg {

namespace {

void check_params(const MeanShiftParams& p) {
    if (p.spatial_bandwidth < 1) {
        throw std::invalid_argument("mean_shift_filter: spatial_bandwidth must be >= 1");
    }
    if (p.color_bandwidth < 1) {
        throw std::invalid_argument("mean_shift_filter: color_bandwidth must be >= 1");
    }
    if (p.pyramid_levels < 0) {
        throw std::invalid_argument("mean_shift_filter: pyramid_levels must be >= 0");
    }
    if (p.max_iterations < 1) {
        throw std::invalid_argument("mean_shift_filter: max_iterations must be >= 1");
    }
}

// Converged color for one pixel. The iteration starts from the pixel's own
// source color unless `init` provides a prior estimate (pyramid hand-down);
// either way the result is an approximate fixed point of the update, which is
// what makes repeated filtering stable. With `pin` the window stays anchored
// at (x0, y0) and only the color iterates: the coarse level already did the
// spatial walk, so polishing a hand-down needs no second one.
void filter_pixel(const RgbImage& src, int x0, int y0, const MeanShiftParams& p,
                  const std::uint8_t* init, bool pin, float out[3]) {
    const int w = src.width;
    const int h = src.height;
    const float sb = static_cast<float>(p.spatial_bandwidth);
    const float cb = static_cast<float>(p.color_bandwidth);
    float px = static_cast<float>(x0);
    float py = static_cast<float>(y0);
    const std::uint8_t* o = init ? init : src.px(x0, y0);
    float c0 = o[0], c1 = o[1], c2 = o[2];

    for (int iter = 0; iter < p.max_iterations; ++iter) {
        const int xlo = clampi(static_cast<int>(std::ceil(px - sb)), 0, w - 1);
        const int xhi = clampi(static_cast<int>(std::floor(px + sb)), 0, w - 1);
        const int ylo = clampi(static_cast<int>(std::ceil(py - sb)), 0, h - 1);
        const int yhi = clampi(static_cast<int>(std::floor(py + sb)), 0, h - 1);
        double sx = 0.0, sy = 0.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
        long n = 0;
        for (int qy = ylo; qy <= yhi; ++qy) {
            const std::uint8_t* row = src.px(xlo, qy);
            for (int qx = xlo; qx <= xhi; ++qx, row += 3) {
                const float d0 = std::abs(static_cast<float>(row[0]) - c0);
                const float d1 = std::abs(static_cast<float>(row[1]) - c1);
                const float d2 = std::abs(static_cast<float>(row[2]) - c2);
                if (d0 > cb || d1 > cb || d2 > cb) continue;
                sx += qx;
                sy += qy;
                s0 += row[0];
                s1 += row[1];
                s2 += row[2];
                ++n;
            }
        }
        if (n == 0) break;
        const float nx = pin ? px : static_cast<float>(sx / n);
        const float ny = pin ? py : static_cast<float>(sy / n);
        const float n0 = static_cast<float>(s0 / n);
        const float n1 = static_cast<float>(s1 / n);
        const float n2 = static_cast<float>(s2 / n);
        float shift = std::abs(nx - px);
        shift = std::max(shift, std::abs(ny - py));
        shift = std::max(shift, std::abs(n0 - c0));
        shift = std::max(shift, std::abs(n1 - c1));
        shift = std::max(shift, std::abs(n2 - c2));
        px = nx;
        py = ny;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        if (shift < p.convergence_eps) break;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
}

RgbImage filter_level(const RgbImage& src, const MeanShiftParams& p) {
    RgbImage out(src.width, src.height);
    float c[3];
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            filter_pixel(src, x, y, p, nullptr, false, c);
            out.set(x, y, clamp_u8(std::lround(c[0])), clamp_u8(std::lround(c[1])),
                    clamp_u8(std::lround(c[2])));
        }
    }
    return out;
}

RgbImage downsample2(const RgbImage& src) {
    const int cw = (src.width + 1) / 2;
    const int ch = (src.height + 1) / 2;
    RgbImage out(cw, ch);
    for (int y = 0; y < ch; ++y) {
        const int y0 = 2 * y;
        const int y1 = std::min(2 * y + 1, src.height - 1);
        for (int x = 0; x < cw; ++x) {
            const int x0 = 2 * x;
            const int x1 = std::min(2 * x + 1, src.width - 1);
            for (int c = 0; c < 3; ++c) {
                const int sum = src.at(x0, y0, c) + src.at(x1, y0, c) +
                                src.at(x0, y1, c) + src.at(x1, y1, c);
                out.at(x, y, c) = static_cast<std::uint8_t>((sum + 2) / 4);
            }
        }
    }
    return out;
}

}  // namespace

RgbImage mean_shift_filter(const RgbImage& img, const MeanShiftParams& p) {
    check_params(p);

    // Box pyramid; levels stop early once the image gets too small to carry
    // useful structure.
    std::vector<RgbImage> pyr;
    pyr.push_back(img);
    for (int l = 0; l < p.pyramid_levels; ++l) {
        const RgbImage& top = pyr.back();
        if ((top.width + 1) / 2 < 4 || (top.height + 1) / 2 < 4) break;
        pyr.push_back(downsample2(top));
    }

    RgbImage result = filter_level(pyr.back(), p);

    for (int level = static_cast<int>(pyr.size()) - 2; level >= 0; --level) {
        const RgbImage& src = pyr[static_cast<std::size_t>(level)];
        // Nearest-neighbor upsample of the coarser result.
        RgbImage init(src.width, src.height);
        for (int y = 0; y < src.height; ++y) {
            for (int x = 0; x < src.width; ++x) {
                const std::uint8_t* cp = result.px(x / 2, y / 2);
                init.set(x, y, cp[0], cp[1], cp[2]);
            }
        }
        // The coarse color stands in for a pixel only when it is within the
        // color bandwidth of what is actually there; everything else (plus a
        // guard ring for the seams) is refiltered at this resolution.
        BinaryMask refilter(src.width, src.height);
        for (int y = 0; y < src.height; ++y) {
            for (int x = 0; x < src.width; ++x) {
                const std::uint8_t* a = src.px(x, y);
                const std::uint8_t* b = init.px(x, y);
                const int d = std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]),
                                        std::abs(a[2] - b[2])});
                if (d > p.color_bandwidth) refilter.set(x, y, true);
            }
        }
        refilter = dilate_b(refilter, StructuringElement::disk(1));

        // Hand-down is only trustworthy away from the refiltered zone: 2x
        // blocks straddling its border mix converged and copied colors, and
        // window means leak that disagreement one bandwidth further. Pixels in
        // that band polish the handed-down estimate until it is a fixed point
        // of the same update; far-field pixels keep the coarse color verbatim.
        const BinaryMask seam = dilate_b(refilter, StructuringElement::disk(p.spatial_bandwidth));

        RgbImage out = init;
        float c[3];
        for (int y = 0; y < src.height; ++y) {
            for (int x = 0; x < src.width; ++x) {
                if (!seam.at(x, y)) continue;
                const bool fresh = refilter.at(x, y);
                filter_pixel(src, x, y, p, fresh ? nullptr : init.px(x, y), !fresh, c);
                out.set(x, y, clamp_u8(std::lround(c[0])), clamp_u8(std::lround(c[1])),
                        clamp_u8(std::lround(c[2])));
            }
        }
        result = std::move(out);
    }
    return result;
}

}  // namespace lesionseg
