#include "lesionseg/filters.hpp"

#include <array>
#include <stdexcept>

namespace lesionseg {

namespace {

// Huang-style sliding histogram along each row. The window keeps clamped
// duplicates, so the sample count is always (2r+1)^2.
class WindowHistogram {
public:
    explicit WindowHistogram(int target_rank) : rank_(target_rank) {}

    void clear() { counts_.fill(0); total_ = 0; }
    void add(std::uint8_t v) { ++counts_[v]; ++total_; }
    void remove(std::uint8_t v) { --counts_[v]; --total_; }

    std::uint8_t median() const {
        int cum = 0;
        for (int v = 0; v < 256; ++v) {
            cum += counts_[v];
            if (cum >= rank_) return static_cast<std::uint8_t>(v);
        }
        return 255;
    }

private:
    std::array<int, 256> counts_{};
    int total_ = 0;
    int rank_;
};

}  // namespace

GrayImage median_filter_gray(const GrayImage& img, int radius) {
    if (radius < 0) throw std::invalid_argument("median_filter_gray: radius must be >= 0");
    if (radius == 0) return img;
    const int w = img.width, h = img.height, r = radius;
    const int n = (2 * r + 1) * (2 * r + 1);
    GrayImage out(w, h);
    WindowHistogram hist((n + 1) / 2);
    for (int y = 0; y < h; ++y) {
        hist.clear();
        for (int dy = -r; dy <= r; ++dy) {
            const std::uint8_t* row = img.row(clampi(y + dy, 0, h - 1));
            for (int dx = -r; dx <= r; ++dx) hist.add(row[clampi(dx, 0, w - 1)]);
        }
        out.at(0, y) = hist.median();
        for (int x = 1; x < w; ++x) {
            for (int dy = -r; dy <= r; ++dy) {
                const std::uint8_t* row = img.row(clampi(y + dy, 0, h - 1));
                hist.remove(row[clampi(x - 1 - r, 0, w - 1)]);
                hist.add(row[clampi(x + r, 0, w - 1)]);
            }
            out.at(x, y) = hist.median();
        }
    }
    return out;
}

RgbImage median_filter_rgb(const RgbImage& img, int radius) {
    auto [r, g, b] = split_channels(img);
    return merge_channels(median_filter_gray(r, radius), median_filter_gray(g, radius),
                          median_filter_gray(b, radius));
}

}  // namespace lesionseg
