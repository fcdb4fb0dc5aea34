#include "lesionseg/pipeline_meanshift.hpp"

#include <queue>
#include <stdexcept>

#include "lesionseg/errors.hpp"
#include "lesionseg/inpaint.hpp"
#include "lesionseg/labeling.hpp"
#include "lesionseg/meanshift.hpp"
#include "lesionseg/morphology.hpp"
#include "lesionseg/pipeline_watershed.hpp"
#include "lesionseg/threshold.hpp"

namespace lesionseg {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

// OTSU dark class, closing-then-opening cleanup, largest component. Shared
// tail of both color modes.
BinaryMask finalize_mask(const GrayImage& gray, const PipelineConfig& cfg) {
    const int t = otsu_threshold(histogram(gray));
    BinaryMask mask = apply_threshold(gray, t, Polarity::ForegroundBelow);
    const StructuringElement post = StructuringElement::disk(cfg.post_morph_radius);
    mask = open_b(close_b(mask, post), post);
    mask = largest_component(mask);
    if (mask.empty_mask() || mask.full_mask()) throw NoLesionError();
    return mask;
}

}  // namespace

BinaryMask region_grow(const GrayImage& img,
                       const std::vector<std::pair<int, int>>& seeds,
                       int max_intensity) {
    const int w = img.width;
    const int h = img.height;
    BinaryMask grown(w, h);
    std::queue<std::pair<int, int>> frontier;
    for (const auto& [sx, sy] : seeds) {
        if (!img.in_bounds(sx, sy)) {
            throw std::invalid_argument("region_grow: seed out of bounds");
        }
        if (img.at(sx, sy) >= max_intensity || grown.at(sx, sy)) continue;
        grown.set(sx, sy, true);
        frontier.emplace(sx, sy);
    }
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop();
        for (int k = 0; k < 4; ++k) {
            const int nx = x + kDx[k];
            const int ny = y + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            if (grown.at(nx, ny) || img.at(nx, ny) >= max_intensity) continue;
            grown.set(nx, ny, true);
            frontier.emplace(nx, ny);
        }
    }
    return grown;
}

BinaryMask detect_border_mask(const GrayImage& gray, const PipelineConfig& cfg) {
    GrayImage work = dilate(gray, StructuringElement::disk(cfg.border_dilate_radius));
    work = open(work, StructuringElement::disk(cfg.border_open_radius));
    const std::vector<std::pair<int, int>> corners = {
        {0, 0},
        {gray.width - 1, 0},
        {0, gray.height - 1},
        {gray.width - 1, gray.height - 1},
    };
    return region_grow(work, corners, cfg.border_threshold);
}

GrayImage fill_borders(const GrayImage& gray, const PipelineConfig& cfg) {
    const BinaryMask border = detect_border_mask(gray, cfg);
    GrayImage out = gray;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (border.data[i]) out.data[i] = static_cast<std::uint8_t>(cfg.border_fill_value);
    }
    return out;
}

BinaryMask segment_method2(const RgbImage& img, const PipelineConfig& cfg) {
    const MeanShiftParams params = mean_shift_params(cfg);

    if (cfg.color_mode == ColorMode::Gray) {
        GrayImage gray = fill_borders(rgb_to_gray(img), cfg);
        const BinaryMask hair = build_hair_mask(gray_to_rgb(gray), cfg);
        gray = inpaint_telea(gray, hair, cfg.inpaint_radius);
        const RgbImage smoothed = mean_shift_filter(gray_to_rgb(gray), params);
        return finalize_mask(rgb_to_gray(smoothed), cfg);
    }

    const BinaryMask border = detect_border_mask(rgb_to_gray(img), cfg);
    RgbImage color = img;
    for (std::size_t i = 0; i < border.data.size(); ++i) {
        if (!border.data[i]) continue;
        const std::uint8_t v = static_cast<std::uint8_t>(cfg.border_fill_value);
        color.data[i * 3] = v;
        color.data[i * 3 + 1] = v;
        color.data[i * 3 + 2] = v;
    }
    const BinaryMask hair = build_hair_mask(color, cfg);
    color = inpaint_rgb(color, hair, InpaintMethod::Telea, cfg.inpaint_radius);
    const RgbImage smoothed = mean_shift_filter(color, params);
    return finalize_mask(rgb_to_gray(smoothed), cfg);
}

}  // namespace lesionseg
