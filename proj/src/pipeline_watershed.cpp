#include "lesionseg/pipeline_watershed.hpp"

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lesionseg/distance.hpp"
#include "lesionseg/errors.hpp"
#include "lesionseg/filters.hpp"
#include "lesionseg/inpaint.hpp"
#include "lesionseg/labeling.hpp"
#include "lesionseg/morphology.hpp"
#include "lesionseg/threshold.hpp"

namespace lesionseg {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

GrayImage channel_tophat(const GrayImage& channel, const PipelineConfig& cfg) {
    const StructuringElement se = StructuringElement::disk(cfg.tophat_radius);
    return cfg.tophat_polarity == TophatPolarity::White ? white_tophat(channel, se)
                                                        : black_tophat(channel, se);
}

}  // namespace

BinaryMask build_hair_mask(const RgbImage& img, const PipelineConfig& cfg) {
    const auto [r, g, b] = split_channels(img);
    const GrayImage tr = channel_tophat(r, cfg);
    const GrayImage tg = channel_tophat(g, cfg);
    const GrayImage tb = channel_tophat(b, cfg);

    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
        const int response =
            std::max(tr.data[i], std::max(tg.data[i], tb.data[i]));
        mask.data[i] = response > cfg.hair_threshold ? 1 : 0;
    }
    mask = close_b(mask, StructuringElement::disk(cfg.hair_close_radius));
    return dilate_b(mask, StructuringElement::disk(cfg.hair_dilate_radius));
}

MarkerSet create_markers(const BinaryMask& lesion_binary, const PipelineConfig& cfg) {
    const StructuringElement clean = StructuringElement::disk(cfg.marker_clean_radius);
    BinaryMask cleaned = close_b(open_b(lesion_binary, clean), clean);
    if (cleaned.empty_mask()) throw NoLesionError();

    MarkerSet ms;
    ms.sure_background = complement(
        dilate_b(cleaned, StructuringElement::disk(cfg.bg_dilate_radius)));

    const FloatImage d = edt(cleaned);
    float dmax = 0.0f;
    for (const float v : d.data) dmax = std::max(dmax, v);
    const float cut = static_cast<float>(cfg.fg_dist_fraction) * dmax;
    ms.sure_foreground = BinaryMask(cleaned.width, cleaned.height);
    for (std::size_t i = 0; i < d.data.size(); ++i) {
        ms.sure_foreground.data[i] = d.data[i] > cut ? 1 : 0;
    }

    ms.unknown = BinaryMask(cleaned.width, cleaned.height);
    for (std::size_t i = 0; i < ms.unknown.data.size(); ++i) {
        ms.unknown.data[i] =
            (ms.sure_foreground.data[i] || ms.sure_background.data[i]) ? 0 : 1;
    }

    auto [components, count] = connected_components(ms.sure_foreground);
    ms.markers = LabelMap(cleaned.width, cleaned.height);
    for (std::size_t i = 0; i < ms.markers.labels.size(); ++i) {
        if (components.labels[i] > 0) {
            ms.markers.labels[i] = components.labels[i] + 1;
        } else if (ms.sure_background.data[i]) {
            ms.markers.labels[i] = 1;
        }
    }
    return ms;
}

LabelMap watershed(const GrayImage& gradient, const LabelMap& markers) {
    require_same_size(gradient.width, gradient.height, markers.width, markers.height,
                      "watershed");
    const int w = gradient.width;
    const int h = gradient.height;

    int distinct = 0;
    std::vector<std::uint8_t> seen;
    for (const std::int32_t v : markers.labels) {
        if (v <= 0) continue;
        if (static_cast<std::size_t>(v) >= seen.size()) seen.resize(v + 1, 0);
        if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            ++distinct;
        }
    }
    if (distinct < 2) {
        throw std::invalid_argument("watershed: need at least 2 distinct positive marker labels");
    }

    LabelMap out = markers;
    // (gradient value, insertion sequence) min-heap; the sequence makes
    // equal-relief flooding first-come-first-served and the whole flood
    // deterministic.
    using Entry = std::tuple<std::uint8_t, std::uint64_t, std::int32_t>;  // value, seq, index
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    std::vector<std::uint8_t> queued(static_cast<std::size_t>(w) * h, 0);
    std::uint64_t seq = 0;

    auto push_neighbors = [&](int x, int y) {
        for (int k = 0; k < 4; ++k) {
            const int nx = x + kDx[k];
            const int ny = y + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (out.labels[nidx] != 0 || queued[nidx]) continue;
            queued[nidx] = 1;
            heap.emplace(gradient.data[nidx], seq++, static_cast<std::int32_t>(nidx));
        }
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (out.at(x, y) != 0) push_neighbors(x, y);
        }
    }

    while (!heap.empty()) {
        const auto [value, order, idx] = heap.top();
        heap.pop();
        const int x = idx % w;
        const int y = idx / w;
        if (out.labels[static_cast<std::size_t>(idx)] != 0) continue;

        std::int32_t label = 0;
        bool conflict = false;
        for (int k = 0; k < 4; ++k) {
            const int nx = x + kDx[k];
            const int ny = y + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const std::int32_t nl = out.at(nx, ny);
            if (nl <= 0) continue;
            if (label == 0) label = nl;
            else if (label != nl) conflict = true;
        }
        out.labels[static_cast<std::size_t>(idx)] = (conflict || label == 0) ? -1 : label;
        push_neighbors(x, y);
    }
    return out;
}

BinaryMask segment_method1(const RgbImage& img, const PipelineConfig& cfg) {
    const RgbImage denoised = median_filter_rgb(img, cfg.median_radius);
    const BinaryMask hair = build_hair_mask(denoised, cfg);
    const RgbImage repaired = inpaint_rgb(denoised, hair, cfg.inpaint_method,
                                          cfg.inpaint_radius, cfg.diffusion_iterations);
    const GrayImage gray = rgb_to_gray(repaired);

    const int t = otsu_threshold(histogram(gray));
    const BinaryMask candidate = apply_threshold(gray, t, Polarity::ForegroundBelow);
    if (candidate.full_mask()) throw NoLesionError();

    const MarkerSet ms = create_markers(candidate, cfg);
    if (ms.sure_background.empty_mask()) throw NoLesionError();

    const GrayImage relief = morph_gradient(gray, StructuringElement::disk(1));
    const LabelMap flooded = watershed(relief, ms.markers);

    BinaryMask lesion(img.width, img.height);
    for (std::size_t i = 0; i < lesion.data.size(); ++i) {
        const std::int32_t l = flooded.labels[i];
        lesion.data[i] = (l >= 2 || l == -1) ? 1 : 0;
    }
    return largest_component(lesion);
}

}  // namespace lesionseg
