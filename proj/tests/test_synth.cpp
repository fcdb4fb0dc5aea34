#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <string>

#include "lesionseg/image.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/synth.hpp"

using namespace lesionseg;
namespace fs = std::filesystem;

TEST_SUITE("synth") {

TEST_CASE("samples are reproducible and distinct") {
    const SynthSample a = make_synth_sample(7, 3, 128, false, false);
    const SynthSample b = make_synth_sample(7, 3, 128, false, false);
    CHECK(a.image.data == b.image.data);
    CHECK(a.truth.data == b.truth.data);
    CHECK(a.name == b.name);

    const SynthSample other_index = make_synth_sample(7, 4, 128, false, false);
    CHECK(a.image.data != other_index.image.data);
    const SynthSample other_seed = make_synth_sample(8, 3, 128, false, false);
    CHECK(a.image.data != other_seed.image.data);
}

TEST_CASE("decorations change the image but never the truth") {
    const SynthSample plain = make_synth_sample(11, 0, 128, false, false);
    const SynthSample hairy = make_synth_sample(11, 0, 128, true, false);
    const SynthSample dark_rim = make_synth_sample(11, 0, 128, false, true);
    CHECK(plain.truth.data == hairy.truth.data);
    CHECK(plain.truth.data == dark_rim.truth.data);
    CHECK(plain.image.data != hairy.image.data);
    CHECK(plain.image.data != dark_rim.image.data);
}

TEST_CASE("sample geometry and naming") {
    const SynthSample s = make_synth_sample(5, 12, 96, false, false);
    CHECK(s.image.width == 96);
    CHECK(s.image.height == 96);
    CHECK(s.truth.width == 96);
    CHECK(s.truth.height == 96);
    CHECK(s.name == "synth_012");

    // The lesion is a real blob: present, a minority of the frame, compact
    // enough to avoid the borders.
    const std::size_t area = s.truth.count();
    CHECK(area > std::size_t(96 * 96) / 100);
    CHECK(area < std::size_t(96 * 96) / 2);
    for (int x = 0; x < 96; ++x) {
        CHECK_FALSE(s.truth.at(x, 0));
        CHECK_FALSE(s.truth.at(x, 95));
    }
    for (int y = 0; y < 96; ++y) {
        CHECK_FALSE(s.truth.at(0, y));
        CHECK_FALSE(s.truth.at(95, y));
    }
}

TEST_CASE("dataset generation writes matched pairs") {
    const fs::path dir = "synth_scratch";
    fs::remove_all(dir);
    SynthOptions opt;
    opt.count = 3;
    opt.seed = 21;
    opt.size = 64;
    generate_dataset(dir.string(), opt);

    for (int i = 0; i < 3; ++i) {
        char stem[16];
        std::snprintf(stem, sizeof(stem), "synth_%03d", i);
        const fs::path img_path = dir / (std::string(stem) + ".png");
        const fs::path truth_path = dir / (std::string(stem) + "_segmentation.png");
        REQUIRE(fs::exists(img_path));
        REQUIRE(fs::exists(truth_path));

        const RgbImage img = load_image(img_path.string());
        const BinaryMask truth = load_mask(truth_path.string());
        const SynthSample want = make_synth_sample(21, i, 64, false, false);
        CHECK(img.data == want.image.data);
        CHECK(truth.data == want.truth.data);
    }
    fs::remove_all(dir);
}

}  // TEST_SUITE
