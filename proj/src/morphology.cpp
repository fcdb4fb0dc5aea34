#include "lesionseg/morphology.hpp"

#include <stdexcept>

namespace lesionseg {

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 0) throw std::invalid_argument("disk radius must be >= 0");
    StructuringElement se;
    se.shape = Shape::Disk;
    se.param = radius;
    se.vradius = radius;
    se.run_half_width.resize(2 * radius + 1);
    for (int dy = -radius; dy <= radius; ++dy) {
        int w = 0;
        while ((w + 1) * (w + 1) + dy * dy <= radius * radius) ++w;
        se.run_half_width[dy + radius] = w;
    }
    return se;
}

StructuringElement StructuringElement::square(int side) {
    if (side < 1) throw std::invalid_argument("square side must be >= 1");
    StructuringElement se;
    se.shape = Shape::Square;
    se.param = side;
    se.vradius = side / 2;
    se.run_half_width.assign(2 * se.vradius + 1, se.vradius);
    return se;
}

std::vector<std::pair<int, int>> StructuringElement::offsets() const {
    std::vector<std::pair<int, int>> out;
    for (int dy = -vradius; dy <= vradius; ++dy)
        for (int dx = -half_width(dy); dx <= half_width(dy); ++dx) out.emplace_back(dx, dy);
    return out;
}

namespace {

enum class Rank { Min, Max };

// Sliding min/max over the clipped window [x-half, x+half] of one row.
// Monotonic index deque; O(w) per row.
template <Rank R>
void horizontal_filter(const std::uint8_t* row, int w, int half, std::uint8_t* out,
                       std::vector<int>& deque_buf) {
    if (half == 0) {
        std::copy(row, row + w, out);
        return;
    }
    deque_buf.clear();
    deque_buf.resize(static_cast<std::size_t>(w));
    int* dq = deque_buf.data();
    int head = 0, tail = 0;  // [head, tail)
    auto push = [&](int idx) {
        std::uint8_t v = row[idx];
        if constexpr (R == Rank::Min) {
            while (tail > head && row[dq[tail - 1]] >= v) --tail;
        } else {
            while (tail > head && row[dq[tail - 1]] <= v) --tail;
        }
        dq[tail++] = idx;
    };
    int hi = std::min(half, w - 1);
    for (int i = 0; i <= hi; ++i) push(i);
    for (int x = 0; x < w; ++x) {
        if (x > 0) {
            int add = x + half;
            if (add < w) push(add);
        }
        int lo = x - half;
        while (dq[head] < lo) ++head;
        out[x] = row[dq[head]];
    }
}

template <Rank R>
GrayImage rank_filter(const GrayImage& img, const StructuringElement& se) {
    const int w = img.width, h = img.height;
    GrayImage out(w, h);
    std::vector<std::uint8_t> tmp(static_cast<std::size_t>(w));
    std::vector<std::uint8_t> acc(static_cast<std::size_t>(w));
    std::vector<int> dq;
    for (int y = 0; y < h; ++y) {
        bool first = true;
        for (int dy = -se.vradius; dy <= se.vradius; ++dy) {
            const std::uint8_t* src = img.row(clampi(y + dy, 0, h - 1));
            horizontal_filter<R>(src, w, se.half_width(dy), tmp.data(), dq);
            if (first) {
                std::copy(tmp.begin(), tmp.end(), acc.begin());
                first = false;
            } else if constexpr (R == Rank::Min) {
                for (int x = 0; x < w; ++x) acc[x] = std::min(acc[x], tmp[x]);
            } else {
                for (int x = 0; x < w; ++x) acc[x] = std::max(acc[x], tmp[x]);
            }
        }
        std::copy(acc.begin(), acc.end(), out.row(y));
    }
    return out;
}

BinaryMask to_mask(const GrayImage& g) {
    BinaryMask m(g.width, g.height);
    for (std::size_t i = 0; i < m.pixel_count(); ++i) m.data[i] = g.data[i] > 127 ? 1 : 0;
    return m;
}

GrayImage to_gray255(const BinaryMask& m) {
    GrayImage g(m.width, m.height);
    for (std::size_t i = 0; i < g.pixel_count(); ++i) g.data[i] = m.data[i] ? 255 : 0;
    return g;
}

}  // namespace

GrayImage erode(const GrayImage& img, const StructuringElement& se) {
    return rank_filter<Rank::Min>(img, se);
}

GrayImage dilate(const GrayImage& img, const StructuringElement& se) {
    return rank_filter<Rank::Max>(img, se);
}

GrayImage open(const GrayImage& img, const StructuringElement& se) {
    return dilate(erode(img, se), se);
}

GrayImage close(const GrayImage& img, const StructuringElement& se) {
    return erode(dilate(img, se), se);
}

GrayImage white_tophat(const GrayImage& img, const StructuringElement& se) {
    GrayImage o = open(img, se);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        int d = int(img.data[i]) - int(o.data[i]);
        out.data[i] = static_cast<std::uint8_t>(d < 0 ? 0 : d);
    }
    return out;
}

GrayImage black_tophat(const GrayImage& img, const StructuringElement& se) {
    GrayImage c = close(img, se);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        int d = int(c.data[i]) - int(img.data[i]);
        out.data[i] = static_cast<std::uint8_t>(d < 0 ? 0 : d);
    }
    return out;
}

GrayImage morph_gradient(const GrayImage& img, const StructuringElement& se) {
    GrayImage d = dilate(img, se);
    GrayImage e = erode(img, se);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i)
        out.data[i] = static_cast<std::uint8_t>(d.data[i] - e.data[i]);
    return out;
}

BinaryMask erode_b(const BinaryMask& mask, const StructuringElement& se) {
    return to_mask(erode(to_gray255(mask), se));
}

BinaryMask dilate_b(const BinaryMask& mask, const StructuringElement& se) {
    return to_mask(dilate(to_gray255(mask), se));
}

BinaryMask open_b(const BinaryMask& mask, const StructuringElement& se) {
    return to_mask(open(to_gray255(mask), se));
}

BinaryMask close_b(const BinaryMask& mask, const StructuringElement& se) {
    return to_mask(close(to_gray255(mask), se));
}

BinaryMask complement(const BinaryMask& mask) {
    BinaryMask out(mask.width, mask.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) out.data[i] = mask.data[i] ? 0 : 1;
    return out;
}

}  // namespace lesionseg
