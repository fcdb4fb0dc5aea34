#include "lesionseg/image.hpp"

#include <cmath>

namespace lesionseg {

GrayImage rgb_to_gray(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* p = img.data.data() + i * 3;
        double y = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        long v = std::lround(y);
        out.data[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
    return out;
}

RgbImage gray_to_rgb(const GrayImage& img) {
    RgbImage out(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t v = img.data[i];
        std::uint8_t* p = out.data.data() + i * 3;
        p[0] = p[1] = p[2] = v;
    }
    return out;
}

std::tuple<GrayImage, GrayImage, GrayImage> split_channels(const RgbImage& img) {
    GrayImage r(img.width, img.height), g(img.width, img.height), b(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* p = img.data.data() + i * 3;
        r.data[i] = p[0];
        g.data[i] = p[1];
        b.data[i] = p[2];
    }
    return {std::move(r), std::move(g), std::move(b)};
}

RgbImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    require_same_size(r.width, r.height, g.width, g.height, "merge_channels");
    require_same_size(r.width, r.height, b.width, b.height, "merge_channels");
    RgbImage out(r.width, r.height);
    const std::size_t n = out.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t* p = out.data.data() + i * 3;
        p[0] = r.data[i];
        p[1] = g.data[i];
        p[2] = b.data[i];
    }
    return out;
}

}  // namespace lesionseg
