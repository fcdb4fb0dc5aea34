#include "lesionseg/threshold.hpp"

#include <stdexcept>

namespace lesionseg {

Histogram256 histogram(const GrayImage& img) {
    Histogram256 h;
    for (std::uint8_t v : img.data) ++h.counts[v];
    return h;
}

namespace {

using u128 = unsigned __int128;

// Exact compare of a/b vs c/d (non-negative numerators, positive
// denominators) by continued-fraction descent; no overflow possible.
int cmp_ratio(u128 a, u128 b, u128 c, u128 d) {
    int sign = 1;
    for (;;) {
        u128 q1 = a / b, q2 = c / d;
        if (q1 != q2) return (q1 < q2 ? -1 : 1) * sign;
        u128 r1 = a - q1 * b, r2 = c - q2 * d;
        if (r1 == 0 && r2 == 0) return 0;
        if (r1 == 0) return -sign;
        if (r2 == 0) return sign;
        // r1/b vs r2/d == inverse of b/r1 vs d/r2
        a = b; b = r1; c = d; d = r2;
        sign = -sign;
    }
}

}  // namespace

int otsu_threshold(const Histogram256& hist) {
    std::uint64_t total = hist.total();
    if (total == 0) throw std::invalid_argument("otsu_threshold: empty histogram");

    int lo = 0, hi = 255;
    while (hist.counts[lo] == 0) ++lo;
    while (hist.counts[hi] == 0) --hi;
    if (lo == hi) return lo;  // single-valued

    std::uint64_t sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += hist.counts[v] * std::uint64_t(v);

    // between-class variance at t, as the exact rational
    //   (s0*n1 - s1*n0)^2 / (n0*n1)
    int best_t = -1;
    u128 best_num = 0, best_den = 1;
    std::uint64_t n0 = 0, s0 = 0;
    for (int t = lo; t < hi; ++t) {
        n0 += hist.counts[t];
        s0 += hist.counts[t] * std::uint64_t(t);
        std::uint64_t n1 = total - n0;
        std::uint64_t s1 = sum_all - s0;
        __int128 diff = __int128(s0) * n1 - __int128(s1) * n0;
        u128 num = u128(diff < 0 ? -diff : diff);
        num *= num;
        u128 den = u128(n0) * n1;
        if (best_t < 0 || cmp_ratio(num, den, best_num, best_den) > 0) {
            best_t = t;
            best_num = num;
            best_den = den;
        }
    }
    return best_t;
}

BinaryMask apply_threshold(const GrayImage& img, int t, Polarity polarity) {
    BinaryMask m(img.width, img.height);
    for (std::size_t i = 0; i < m.pixel_count(); ++i) {
        bool fg = polarity == Polarity::ForegroundAbove ? img.data[i] > t : img.data[i] <= t;
        m.data[i] = fg ? 1 : 0;
    }
    return m;
}

}  // namespace lesionseg
