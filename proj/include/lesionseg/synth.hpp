#pragma once

#include <cstdint>
#include <string>

#include "lesionseg/image.hpp"

namespace lesionseg {

struct SynthOptions {
    int count = 20;
    std::uint64_t seed = 7;
    int size = 512;
    bool hair = false;
    bool vignette = false;
};

struct SynthSample {
    RgbImage image;
    BinaryMask truth;  // the exact lesion ellipse, unaffected by hair/vignette
    std::string name;  // file stem, e.g. "synth_003"
};

/// One deterministic sample: a rotated dark ellipse (~40-90) on a bright
/// skin field (~180-220) with per-pixel Gaussian noise, optionally crossed
/// by dark hair strokes and framed by a dark circular vignette. The truth
/// mask is the analytic ellipse rasterization. Identical (seed, index,
/// size, flags) give bit-identical samples.
SynthSample make_synth_sample(std::uint64_t seed, int index, int size, bool hair,
                              bool vignette);

/// Writes `<name>.png` and `<name>_segmentation.png` pairs for every index,
/// creating out_dir if needed. Throws IoError when the directory or a file
/// cannot be written.
void generate_dataset(const std::string& out_dir, const SynthOptions& opt);

}  // namespace lesionseg
