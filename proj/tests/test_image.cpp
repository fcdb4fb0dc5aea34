#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "lesionseg/image.hpp"

using namespace lesionseg;

namespace {

RgbImage random_rgb(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    RgbImage img(w, h);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() & 0xff);
    return img;
}

}  // namespace

TEST_SUITE("image") {

TEST_CASE("construction rejects degenerate dimensions") {
    CHECK_THROWS_AS(GrayImage(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(RgbImage(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMask(-1, 2), std::invalid_argument);
    CHECK(GrayImage(1, 1).data.size() == 1);
    CHECK(RgbImage(4, 3).data.size() == 36);
    CHECK(BinaryMask(5, 2).data.size() == 10);
}

TEST_CASE("at_clamped replicates edges") {
    GrayImage g(3, 2);
    for (int i = 0; i < 6; ++i) g.data[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    CHECK(g.at_clamped(-5, 0) == g.at(0, 0));
    CHECK(g.at_clamped(7, 1) == g.at(2, 1));
    CHECK(g.at_clamped(1, -3) == g.at(1, 0));
    CHECK(g.at_clamped(1, 9) == g.at(1, 1));
    CHECK(g.at_clamped(2, 1) == g.at(2, 1));
}

TEST_CASE("gray conversion: pure colors and the documented weighted sum") {
    RgbImage img(3, 1);
    img.set(0, 0, 255, 255, 255);
    img.set(1, 0, 0, 0, 0);
    img.set(2, 0, 100, 150, 200);
    GrayImage g = rgb_to_gray(img);
    CHECK(g.at(0, 0) == 255);
    CHECK(g.at(1, 0) == 0);
    // round(0.299*100 + 0.587*150 + 0.114*200) = round(140.75)
    CHECK(g.at(2, 0) == 141);
}

TEST_CASE("gray conversion matches the weight formula on random pixels") {
    RgbImage img = random_rgb(17, 11, 901);
    GrayImage g = rgb_to_gray(img);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* p = img.px(x, y);
            const int want = static_cast<int>(
                std::lround(0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]));
            CHECK(g.at(x, y) == want);
        }
}

TEST_CASE("gray replication round-trips exactly") {
    GrayImage g(9, 4);
    std::mt19937 rng(7);
    for (auto& v : g.data) v = static_cast<std::uint8_t>(rng() & 0xff);
    RgbImage rgb = gray_to_rgb(g);
    CHECK(rgb.width == g.width);
    CHECK(rgb.height == g.height);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const std::uint8_t* p = rgb.px(x, y);
            CHECK(p[0] == g.at(x, y));
            CHECK(p[1] == g.at(x, y));
            CHECK(p[2] == g.at(x, y));
        }
    GrayImage back = rgb_to_gray(rgb);
    CHECK(back.data == g.data);
}

TEST_CASE("replication round-trip holds for every gray level") {
    GrayImage g(256, 1);
    for (int v = 0; v < 256; ++v) g.at(v, 0) = static_cast<std::uint8_t>(v);
    CHECK(rgb_to_gray(gray_to_rgb(g)).data == g.data);
}

TEST_CASE("split produces constant planes from a constant image") {
    RgbImage img(4, 5);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 4; ++x) img.set(x, y, 1, 2, 3);
    auto [r, g, b] = split_channels(img);
    for (auto v : r.data) CHECK(v == 1);
    for (auto v : g.data) CHECK(v == 2);
    for (auto v : b.data) CHECK(v == 3);
}

TEST_CASE("split of a single pixel") {
    RgbImage img(1, 1);
    img.set(0, 0, 9, 8, 7);
    auto [r, g, b] = split_channels(img);
    CHECK(r.at(0, 0) == 9);
    CHECK(g.at(0, 0) == 8);
    CHECK(b.at(0, 0) == 7);
}

TEST_CASE("merge inverts split") {
    RgbImage img = random_rgb(13, 9, 3344);
    auto [r, g, b] = split_channels(img);
    RgbImage back = merge_channels(r, g, b);
    CHECK(back.data == img.data);
}

TEST_CASE("merge rejects mismatched planes") {
    GrayImage a(3, 3), b(3, 3), c(4, 3);
    CHECK_THROWS_AS(merge_channels(a, b, c), std::invalid_argument);
}

TEST_CASE("conversions preserve dimensions") {
    RgbImage img = random_rgb(7, 12, 55);
    GrayImage g = rgb_to_gray(img);
    CHECK(g.width == 7);
    CHECK(g.height == 12);
    auto [r, gr, b] = split_channels(img);
    CHECK(r.width == 7);
    CHECK(gr.height == 12);
    CHECK(b.width == 7);
    RgbImage rep = gray_to_rgb(g);
    CHECK(rep.width == 7);
    CHECK(rep.height == 12);
}

TEST_CASE("mask count and full/empty predicates") {
    BinaryMask m(6, 4);
    CHECK(m.count() == 0);
    CHECK(m.empty_mask());
    m.set(2, 1, true);
    m.set(5, 3, true);
    CHECK(m.count() == 2);
    CHECK_FALSE(m.empty_mask());
    CHECK_FALSE(m.full_mask());
    BinaryMask f(3, 3, true);
    CHECK(f.full_mask());
}

}  // TEST_SUITE
