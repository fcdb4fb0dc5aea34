#pragma once

#include <array>
#include <cstdint>

#include "lesionseg/image.hpp"

namespace lesionseg {

struct Histogram256 {
    std::array<std::uint64_t, 256> counts{};

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

Histogram256 histogram(const GrayImage& img);

/// Threshold maximizing the between-class variance, class 0 = values <= t.
/// Ties go to the smallest t; a single-valued histogram returns that value.
/// The arg-max comparison is exact (integer rational arithmetic), so the
/// result matches an exhaustive search bit for bit.
int otsu_threshold(const Histogram256& hist);

enum class Polarity { ForegroundAbove, ForegroundBelow };

/// ForegroundAbove: pixel > t.  ForegroundBelow: pixel <= t.
BinaryMask apply_threshold(const GrayImage& img, int t, Polarity polarity);

}  // namespace lesionseg
