#include "lesionseg/distance.hpp"

#include <cmath>
#include <cstdint>

namespace lesionseg {

namespace {

// Marker for "no background anywhere in this row". Big enough to dominate
// every real squared distance, small enough that adding h^2 cannot overflow.
constexpr std::int64_t kInf = std::int64_t{1} << 60;

}  // namespace

std::vector<std::int64_t> edt_squared(const BinaryMask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    if (mask.count() == n) {
        const std::int64_t s = static_cast<std::int64_t>(w + h);
        return std::vector<std::int64_t>(n, s * s);
    }

    // Pass 1: per-row squared distance to the nearest background pixel in
    // the same row.
    std::vector<std::int64_t> f(n);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* row = mask.data.data() + static_cast<std::size_t>(y) * w;
        std::int64_t* frow = f.data() + static_cast<std::size_t>(y) * w;
        std::int64_t d = kInf;
        for (int x = 0; x < w; ++x) {
            d = row[x] ? (d >= w ? kInf : d + 1) : 0;
            frow[x] = d;
        }
        d = kInf;
        for (int x = w - 1; x >= 0; --x) {
            d = row[x] ? (d >= w ? kInf : d + 1) : 0;
            if (d < frow[x]) frow[x] = d;
            frow[x] = frow[x] >= w ? kInf : frow[x] * frow[x];
        }
    }

    // Pass 2: exact 1-D squared-distance transform down each column using the
    // integer lower-envelope scan (Meijster et al.). All arithmetic stays in
    // int64 and the divisions only see non-negative numerators, so truncation
    // equals floor.
    std::vector<std::int64_t> out(n);
    std::vector<int> s(h), t(h);
    for (int x = 0; x < w; ++x) {
        auto fcol = [&](int y) { return f[static_cast<std::size_t>(y) * w + x]; };
        auto parab = [&](std::int64_t y, int i) {
            const std::int64_t dy = y - i;
            return dy * dy + fcol(i);
        };
        int q = 0;
        s[0] = 0;
        t[0] = 0;
        for (int u = 1; u < h; ++u) {
            while (q >= 0 && parab(t[q], s[q]) > parab(t[q], u)) --q;
            if (q < 0) {
                q = 0;
                s[0] = u;
            } else {
                const std::int64_t i = s[q];
                const std::int64_t sep =
                    (u * std::int64_t{u} - i * i + fcol(u) - fcol(s[q])) /
                    (2 * (u - i));
                const std::int64_t wpos = 1 + sep;
                if (wpos < h) {
                    ++q;
                    s[q] = u;
                    t[q] = static_cast<int>(wpos);
                }
            }
        }
        for (int u = h - 1; u >= 0; --u) {
            out[static_cast<std::size_t>(u) * w + x] = parab(u, s[q]);
            if (u == t[q]) --q;
        }
    }
    return out;
}

FloatImage edt(const BinaryMask& mask) {
    FloatImage result(mask.width, mask.height);
    const std::size_t n = result.data.size();
    if (mask.count() == n) {
        const float s = static_cast<float>(mask.width + mask.height);
        for (auto& v : result.data) v = s;
        return result;
    }
    const std::vector<std::int64_t> sq = edt_squared(mask);
    for (std::size_t i = 0; i < n; ++i) {
        result.data[i] = static_cast<float>(
            std::sqrt(static_cast<double>(sq[i])));
    }
    return result;
}

}  // namespace lesionseg
