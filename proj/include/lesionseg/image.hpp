#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace lesionseg {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

inline std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
}

/// Dense 8-bit single-channel raster, row major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    /// Sample with edge replication.
    std::uint8_t at_clamped(int x, int y) const {
        return at(clampi(x, 0, width - 1), clampi(y, 0, height - 1));
    }

    const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
    std::uint8_t* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }

    bool operator==(const GrayImage&) const = default;
};

/// Dense 8-bit three-channel raster, row major, interleaved R,G,B.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // 3 * width * height

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h * 3, 0);
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    std::uint8_t* px(int x, int y) { return data.data() + (static_cast<std::size_t>(y) * width + x) * 3; }
    const std::uint8_t* px(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::uint8_t* p = px(x, y);
        p[0] = r; p[1] = g; p[2] = b;
    }

    bool operator==(const RgbImage&) const = default;
};

/// Foreground/background raster; 1 = foreground.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("BinaryMask: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    bool at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    bool at_clamped(int x, int y) const {
        return at(clampi(x, 0, width - 1), clampi(y, 0, height - 1));
    }

    std::size_t count() const {
        return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t(1)));
    }
    bool empty_mask() const { return count() == 0; }
    bool full_mask() const { return count() == pixel_count(); }

    bool operator==(const BinaryMask&) const = default;
};

/// Non-negative real-valued raster (distance fields, arrival times).
struct FloatImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    FloatImage() = default;
    FloatImage(int w, int h, float fill = 0.f) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("FloatImage: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Signed label raster: -1 = boundary, 0 = unassigned, >= 1 = region id.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;

    LabelMap() = default;
    LabelMap(int w, int h, std::int32_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1) throw std::invalid_argument("LabelMap: dimensions must be >= 1");
        labels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::int32_t& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
    std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const LabelMap&) const = default;
};

inline void require_same_size(int w1, int h1, int w2, int h2, const char* what) {
    if (w1 != w2 || h1 != h2) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

/// BT.601 luma conversion, round-to-nearest.
GrayImage rgb_to_gray(const RgbImage& img);

/// Replicates the gray value into all three channels.
RgbImage gray_to_rgb(const GrayImage& img);

std::tuple<GrayImage, GrayImage, GrayImage> split_channels(const RgbImage& img);

RgbImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b);

}  // namespace lesionseg
