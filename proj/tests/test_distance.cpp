#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lesionseg/distance.hpp"
#include "lesionseg/image.hpp"

using namespace lesionseg;

namespace {

// Nearest-background scan, O(pixels * background pixels), squared space.
std::vector<std::int64_t> edt2_oracle(const BinaryMask& m) {
    std::vector<std::int64_t> out(m.pixel_count());
    const std::int64_t sentinel =
        static_cast<std::int64_t>(m.width + m.height) * (m.width + m.height);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            std::int64_t best = sentinel;
            for (int qy = 0; qy < m.height; ++qy)
                for (int qx = 0; qx < m.width; ++qx) {
                    if (m.at(qx, qy)) continue;
                    const std::int64_t dx = qx - x, dy = qy - y;
                    best = std::min(best, dx * dx + dy * dy);
                }
            out[static_cast<std::size_t>(y) * m.width + x] = best;
        }
    return out;
}

}  // namespace

TEST_SUITE("distance") {

TEST_CASE("unit distances in a short row") {
    BinaryMask m(4, 1);
    m.set(1, 0, true);
    m.set(2, 0, true);
    FloatImage d = edt(m);
    CHECK(d.at(0, 0) == doctest::Approx(0.0));
    CHECK(d.at(1, 0) == doctest::Approx(1.0));
    CHECK(d.at(2, 0) == doctest::Approx(1.0));
    CHECK(d.at(3, 0) == doctest::Approx(0.0));
}

TEST_CASE("single background pixel in the center") {
    BinaryMask m(5, 5, true);
    m.set(2, 2, false);
    FloatImage d = edt(m);
    CHECK(d.at(2, 2) == doctest::Approx(0.0));
    CHECK(d.at(0, 0) == doctest::Approx(std::sqrt(8.0)));
    CHECK(d.at(4, 4) == doctest::Approx(std::sqrt(8.0)));
    CHECK(d.at(4, 0) == doctest::Approx(std::sqrt(8.0)));
    CHECK(d.at(0, 4) == doctest::Approx(std::sqrt(8.0)));
    CHECK(d.at(2, 0) == doctest::Approx(2.0));
    CHECK(d.at(3, 2) == doctest::Approx(1.0));
}

TEST_CASE("matches brute force in exact squared space") {
    std::mt19937 rng(7000);
    int trials = 0;
    for (int w = 1; w <= 12; ++w)
        for (int h = 1; h <= 12; h += 3) {
            BinaryMask m(w, h);
            for (auto& v : m.data) v = static_cast<std::uint8_t>(rng() & 1);
            CHECK(edt_squared(m) == edt2_oracle(m));
            ++trials;
        }
    for (int t = 0; t < 80; ++t) {
        const int w = 1 + int(rng() % 12), h = 1 + int(rng() % 12);
        BinaryMask m(w, h);
        // vary density so some masks are nearly full, some nearly empty
        const unsigned den = 1 + rng() % 7;
        for (auto& v : m.data) v = (rng() % 8 < den) ? 1 : 0;
        CHECK(edt_squared(m) == edt2_oracle(m));
        ++trials;
    }
    CHECK(trials >= 100);
}

TEST_CASE("edt is the square root of the squared transform") {
    std::mt19937 rng(71);
    BinaryMask m(17, 9);
    for (auto& v : m.data) v = static_cast<std::uint8_t>(rng() & 1);
    const auto sq = edt_squared(m);
    const FloatImage d = edt(m);
    for (std::size_t i = 0; i < sq.size(); ++i)
        CHECK(d.data[i] == doctest::Approx(std::sqrt(double(sq[i]))));
}

TEST_CASE("zero exactly on background") {
    std::mt19937 rng(72);
    for (int t = 0; t < 10; ++t) {
        BinaryMask m(10, 10);
        for (auto& v : m.data) v = static_cast<std::uint8_t>(rng() & 1);
        if (m.full_mask()) m.set(0, 0, false);
        const FloatImage d = edt(m);
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 10; ++x) {
                if (m.at(x, y))
                    CHECK(d.at(x, y) > 0.f);
                else
                    CHECK(d.at(x, y) == 0.f);
            }
    }
}

TEST_CASE("one-lipschitz along the grid") {
    std::mt19937 rng(73);
    BinaryMask m(20, 14);
    for (auto& v : m.data) v = (rng() % 5 < 4) ? 1 : 0;
    if (m.full_mask()) m.set(3, 3, false);
    const FloatImage d = edt(m);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x + 1 < m.width; ++x)
            CHECK(std::abs(d.at(x, y) - d.at(x + 1, y)) <= 1.0f + 1e-5f);
    for (int y = 0; y + 1 < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            CHECK(std::abs(d.at(x, y) - d.at(x, y + 1)) <= 1.0f + 1e-5f);
}

TEST_CASE("all-foreground mask maps to the sentinel") {
    BinaryMask m(6, 4, true);
    const FloatImage d = edt(m);
    for (auto v : d.data) CHECK(v == doctest::Approx(10.0f));
    const auto sq = edt_squared(m);
    for (auto v : sq) CHECK(v == 100);
}

TEST_CASE("all-background mask is zero everywhere") {
    BinaryMask m(6, 4, false);
    const FloatImage d = edt(m);
    for (auto v : d.data) CHECK(v == 0.f);
}

}  // TEST_SUITE
