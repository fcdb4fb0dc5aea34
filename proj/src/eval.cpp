#include "lesionseg/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "lesionseg/errors.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/morphology.hpp"
#include "lesionseg/pipeline_meanshift.hpp"
#include "lesionseg/pipeline_watershed.hpp"

namespace fs = std::filesystem;

namespace lesionseg {

namespace {

bool known_image_extension(std::string ext) {
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".jpg" ||
           ext == ".jpeg";
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Commas and newlines would break the CSV row shape.
std::string sanitize_note(std::string note) {
    for (char& c : note) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return note;
}

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

const char* method_name(Method m) {
    return m == Method::Watershed ? "watershed" : "meanshift";
}

std::string variant_name(Method m, const PipelineConfig& cfg) {
    if (m == Method::Watershed) {
        return cfg.inpaint_method == InpaintMethod::Telea ? "telea" : "diffusion";
    }
    return cfg.color_mode == ColorMode::Gray ? "gray" : "color";
}

double jaccard(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_size(pred.width, pred.height, truth.width, truth.height, "jaccard");
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const bool p = pred.data[i] != 0;
        const bool t = truth.data[i] != 0;
        inter += (p && t) ? 1 : 0;
        uni += (p || t) ? 1 : 0;
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

EvalSummary evaluate_batch(const std::string& image_dir,
                           const std::string& truth_dir, Method method,
                           const PipelineConfig& cfg, int jobs) {
    std::error_code ec;
    if (!fs::is_directory(image_dir, ec)) {
        throw IoError(IoError::Kind::Unreadable,
                      "evaluate: not a directory: " + image_dir);
    }
    if (!fs::is_directory(truth_dir, ec)) {
        throw IoError(IoError::Kind::Unreadable,
                      "evaluate: not a directory: " + truth_dir);
    }

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(image_dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path& p = entry.path();
        if (!known_image_extension(p.extension().string())) continue;
        if (!cfg.truth_suffix.empty() && ends_with(p.stem().string(), cfg.truth_suffix)) {
            continue;  // a truth mask living next to its image
        }
        inputs.push_back(p);
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        throw IoError(IoError::Kind::Unreadable,
                      "evaluate: no images in " + image_dir);
    }

    const std::string variant = variant_name(method, cfg);
    std::vector<EvalRecord> records(inputs.size());

    auto run_one = [&](std::size_t i) {
        const fs::path& path = inputs[i];
        EvalRecord rec;
        rec.image_id = path.stem().string();
        rec.method = method;
        rec.variant = variant;
        try {
            const RgbImage img = load_image(path.string());
            fs::path truth_path =
                fs::path(truth_dir) / (rec.image_id + cfg.truth_suffix + ".png");
            if (!fs::exists(truth_path)) {
                truth_path = fs::path(truth_dir) / (rec.image_id + ".png");
            }
            if (!fs::exists(truth_path)) {
                throw IoError(IoError::Kind::Unreadable,
                              "missing ground truth for " + rec.image_id);
            }
            const BinaryMask truth = load_mask(truth_path.string());
            const auto start = std::chrono::steady_clock::now();
            const BinaryMask pred = method == Method::Watershed
                                        ? segment_method1(img, cfg)
                                        : segment_method2(img, cfg);
            const auto stop = std::chrono::steady_clock::now();
            rec.runtime_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
            rec.iou = jaccard(pred, truth);
        } catch (const std::exception& e) {
            rec.iou = 0.0;
            rec.error = sanitize_note(e.what());
        }
        records[i] = std::move(rec);
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(inputs.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < inputs.size();
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    std::sort(records.begin(), records.end(),
              [](const EvalRecord& a, const EvalRecord& b) {
                  return a.image_id < b.image_id;
              });

    EvalSummary summary;
    summary.records = std::move(records);
    summary.count = summary.records.size();
    double sum = 0.0;
    for (const EvalRecord& r : summary.records) sum += r.iou;
    summary.mean_iou = sum / static_cast<double>(summary.count);
    return summary;
}

std::string render_report(const EvalSummary& summary, bool include_times) {
    std::string out = "image_id,method,variant,iou,runtime_ms,error\n";
    for (const EvalRecord& r : summary.records) {
        out += r.image_id;
        out += ',';
        out += method_name(r.method);
        out += ',';
        out += r.variant;
        out += ',';
        out += format_ratio(r.iou);
        out += ',';
        if (include_times) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", r.runtime_ms);
            out += buf;
        }
        out += ',';
        out += r.error;
        out += '\n';
    }
    out += "MEAN,,,";
    out += format_ratio(summary.mean_iou);
    out += ",,\n";
    return out;
}

void write_report(const EvalSummary& summary, const std::string& path,
                  bool include_times) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(IoError::Kind::Unwritable, "report: cannot open " + path);
    }
    out << render_report(summary, include_times);
    if (!out) {
        throw IoError(IoError::Kind::Unwritable, "report: write failed: " + path);
    }
}

RgbImage render_overlay(const RgbImage& img, const BinaryMask& pred,
                        const BinaryMask* truth) {
    require_same_size(img.width, img.height, pred.width, pred.height,
                      "render_overlay");
    RgbImage out = img;
    auto draw_boundary = [&](const BinaryMask& mask, std::uint8_t r, std::uint8_t g,
                             std::uint8_t b) {
        const BinaryMask inner = erode_b(mask, StructuringElement::disk(1));
        for (int y = 0; y < mask.height; ++y) {
            for (int x = 0; x < mask.width; ++x) {
                if (mask.at(x, y) && !inner.at(x, y)) out.set(x, y, r, g, b);
            }
        }
    };
    draw_boundary(pred, 0, 255, 0);
    if (truth) {
        require_same_size(img.width, img.height, truth->width, truth->height,
                          "render_overlay");
        draw_boundary(*truth, 255, 0, 0);
    }
    return out;
}

}  // namespace lesionseg
