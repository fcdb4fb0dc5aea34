#include "lesionseg/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

const char* polarity_name(TophatPolarity p) {
    return p == TophatPolarity::White ? "white" : "black";
}

const char* inpaint_name(InpaintMethod m) {
    return m == InpaintMethod::Telea ? "telea" : "diffusion";
}

const char* color_mode_name(ColorMode m) {
    return m == ColorMode::Gray ? "gray" : "color";
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    auto radius = [&](const char* name, int v) {
        if (v < 0) fail(std::string(name) + " must be >= 0");
    };
    radius("median_radius", cfg.median_radius);
    radius("tophat_radius", cfg.tophat_radius);
    radius("hair_close_radius", cfg.hair_close_radius);
    radius("hair_dilate_radius", cfg.hair_dilate_radius);
    radius("marker_clean_radius", cfg.marker_clean_radius);
    radius("bg_dilate_radius", cfg.bg_dilate_radius);
    radius("border_dilate_radius", cfg.border_dilate_radius);
    radius("border_open_radius", cfg.border_open_radius);
    radius("post_morph_radius", cfg.post_morph_radius);
    if (cfg.hair_threshold < 0 || cfg.hair_threshold > 255) fail("hair_threshold must be in [0,255]");
    if (cfg.inpaint_radius < 1) fail("inpaint_radius must be >= 1");
    if (cfg.diffusion_iterations < 0) fail("diffusion_iterations must be >= 0");
    if (!(cfg.fg_dist_fraction > 0.0 && cfg.fg_dist_fraction < 1.0)) {
        fail("fg_dist_fraction must be in (0,1)");
    }
    if (cfg.border_threshold < 0 || cfg.border_threshold > 255) fail("border_threshold must be in [0,255]");
    if (cfg.border_fill_value < 0 || cfg.border_fill_value > 255) fail("border_fill_value must be in [0,255]");
    if (cfg.spatial_bandwidth < 1) fail("spatial_bandwidth must be >= 1");
    if (cfg.color_bandwidth < 1) fail("color_bandwidth must be >= 1");
    if (cfg.pyramid_levels < 0) fail("pyramid_levels must be >= 0");
    if (cfg.max_iterations < 1) fail("max_iterations must be >= 1");
    if (!(cfg.convergence_eps > 0.0)) fail("convergence_eps must be > 0");
}

void apply_override(PipelineConfig& cfg, const std::string& key,
                    const std::string& value) {
    if (key == "median_radius") cfg.median_radius = parse_int(key, value);
    else if (key == "tophat_radius") cfg.tophat_radius = parse_int(key, value);
    else if (key == "tophat_polarity") {
        if (value == "white") cfg.tophat_polarity = TophatPolarity::White;
        else if (value == "black") cfg.tophat_polarity = TophatPolarity::Black;
        else throw ConfigError("config: tophat_polarity must be white or black, got '" + value + "'");
    } else if (key == "hair_threshold") cfg.hair_threshold = parse_int(key, value);
    else if (key == "hair_close_radius") cfg.hair_close_radius = parse_int(key, value);
    else if (key == "hair_dilate_radius") cfg.hair_dilate_radius = parse_int(key, value);
    else if (key == "inpaint_method") {
        if (value == "telea") cfg.inpaint_method = InpaintMethod::Telea;
        else if (value == "diffusion") cfg.inpaint_method = InpaintMethod::Diffusion;
        else throw ConfigError("config: inpaint_method must be telea or diffusion, got '" + value + "'");
    } else if (key == "inpaint_radius") cfg.inpaint_radius = parse_int(key, value);
    else if (key == "diffusion_iterations") cfg.diffusion_iterations = parse_int(key, value);
    else if (key == "marker_clean_radius") cfg.marker_clean_radius = parse_int(key, value);
    else if (key == "bg_dilate_radius") cfg.bg_dilate_radius = parse_int(key, value);
    else if (key == "fg_dist_fraction") cfg.fg_dist_fraction = parse_double(key, value);
    else if (key == "border_dilate_radius") cfg.border_dilate_radius = parse_int(key, value);
    else if (key == "border_open_radius") cfg.border_open_radius = parse_int(key, value);
    else if (key == "border_threshold") cfg.border_threshold = parse_int(key, value);
    else if (key == "border_fill_value") cfg.border_fill_value = parse_int(key, value);
    else if (key == "spatial_bandwidth") cfg.spatial_bandwidth = parse_int(key, value);
    else if (key == "color_bandwidth") cfg.color_bandwidth = parse_int(key, value);
    else if (key == "pyramid_levels") cfg.pyramid_levels = parse_int(key, value);
    else if (key == "max_iterations") cfg.max_iterations = parse_int(key, value);
    else if (key == "convergence_eps") cfg.convergence_eps = parse_double(key, value);
    else if (key == "post_morph_radius") cfg.post_morph_radius = parse_int(key, value);
    else if (key == "color_mode") {
        if (value == "gray") cfg.color_mode = ColorMode::Gray;
        else if (value == "color") cfg.color_mode = ColorMode::Color;
        else throw ConfigError("config: color_mode must be gray or color, got '" + value + "'");
    } else if (key == "truth_suffix") cfg.truth_suffix = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value': " + stripped);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: line " + std::to_string(lineno) + " has an empty key");
        }
        apply_override(cfg, key, value);
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(IoError::Kind::Unreadable, "config: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream os;
    os << "median_radius = " << cfg.median_radius << "\n"
       << "tophat_radius = " << cfg.tophat_radius << "\n"
       << "tophat_polarity = " << polarity_name(cfg.tophat_polarity) << "\n"
       << "hair_threshold = " << cfg.hair_threshold << "\n"
       << "hair_close_radius = " << cfg.hair_close_radius << "\n"
       << "hair_dilate_radius = " << cfg.hair_dilate_radius << "\n"
       << "inpaint_method = " << inpaint_name(cfg.inpaint_method) << "\n"
       << "inpaint_radius = " << cfg.inpaint_radius << "\n"
       << "diffusion_iterations = " << cfg.diffusion_iterations << "\n"
       << "marker_clean_radius = " << cfg.marker_clean_radius << "\n"
       << "bg_dilate_radius = " << cfg.bg_dilate_radius << "\n"
       << "fg_dist_fraction = " << fmt_double(cfg.fg_dist_fraction) << "\n"
       << "border_dilate_radius = " << cfg.border_dilate_radius << "\n"
       << "border_open_radius = " << cfg.border_open_radius << "\n"
       << "border_threshold = " << cfg.border_threshold << "\n"
       << "border_fill_value = " << cfg.border_fill_value << "\n"
       << "spatial_bandwidth = " << cfg.spatial_bandwidth << "\n"
       << "color_bandwidth = " << cfg.color_bandwidth << "\n"
       << "pyramid_levels = " << cfg.pyramid_levels << "\n"
       << "max_iterations = " << cfg.max_iterations << "\n"
       << "convergence_eps = " << fmt_double(cfg.convergence_eps) << "\n"
       << "post_morph_radius = " << cfg.post_morph_radius << "\n"
       << "color_mode = " << color_mode_name(cfg.color_mode) << "\n"
       << "truth_suffix = " << cfg.truth_suffix << "\n";
    return os.str();
}

MeanShiftParams mean_shift_params(const PipelineConfig& cfg) {
    MeanShiftParams p;
    p.spatial_bandwidth = cfg.spatial_bandwidth;
    p.color_bandwidth = cfg.color_bandwidth;
    p.pyramid_levels = cfg.pyramid_levels;
    p.max_iterations = cfg.max_iterations;
    p.convergence_eps = static_cast<float>(cfg.convergence_eps);
    return p;
}

}  // namespace lesionseg
