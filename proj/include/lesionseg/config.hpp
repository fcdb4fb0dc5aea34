#pragma once

#include <string>

#include "lesionseg/inpaint.hpp"
#include "lesionseg/meanshift.hpp"

namespace lesionseg {

enum class TophatPolarity {
    White,  // bright structures on dark ground
    Black,  // dark structures on bright ground
};

enum class ColorMode {
    Gray,   // mean-shift runs on the gray round-trip
    Color,  // mean-shift runs on the color image directly
};

/// Every tunable of both pipelines and the evaluation harness. The defaults
/// are the values the test suites are calibrated against; a default
/// constructed config always validates.
struct PipelineConfig {
    // shared preprocessing
    int median_radius = 2;
    int tophat_radius = 20;
    TophatPolarity tophat_polarity = TophatPolarity::Black;
    int hair_threshold = 40;
    int hair_close_radius = 20;
    int hair_dilate_radius = 2;
    InpaintMethod inpaint_method = InpaintMethod::Telea;
    int inpaint_radius = 20;
    int diffusion_iterations = 300;

    // watershed pipeline
    int marker_clean_radius = 3;
    int bg_dilate_radius = 15;
    double fg_dist_fraction = 0.7;

    // mean-shift pipeline
    int border_dilate_radius = 1;
    int border_open_radius = 5;
    int border_threshold = 90;
    int border_fill_value = 220;
    int spatial_bandwidth = 21;
    int color_bandwidth = 40;
    int pyramid_levels = 2;
    int max_iterations = 10;
    double convergence_eps = 1.0;
    int post_morph_radius = 5;
    ColorMode color_mode = ColorMode::Gray;

    // evaluation
    std::string truth_suffix = "_segmentation";

    bool operator==(const PipelineConfig&) const = default;
};

/// Throws ConfigError when any field is out of range.
void validate_config(const PipelineConfig& cfg);

/// Applies one `key=value` override; unknown keys and unparsable values
/// throw ConfigError.
void apply_override(PipelineConfig& cfg, const std::string& key,
                    const std::string& value);

/// Parses `key = value` lines; `#` starts a comment, blank lines ignored.
PipelineConfig parse_config_text(const std::string& text);

/// Reads and parses a config file; throws IoError when unreadable.
PipelineConfig load_config_file(const std::string& path);

/// Canonical `key = value` rendering; parse_config_text round-trips it.
std::string serialize_config(const PipelineConfig& cfg);

MeanShiftParams mean_shift_params(const PipelineConfig& cfg);

}  // namespace lesionseg
