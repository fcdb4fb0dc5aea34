#pragma once

#include <string>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/image.hpp"

namespace lesionseg {

enum class Method {
    Watershed,
    Meanshift,
};

const char* method_name(Method m);

/// Variant tag recorded per run: the inpaint method for the watershed
/// pipeline, the color mode for the mean-shift pipeline.
std::string variant_name(Method m, const PipelineConfig& cfg);

struct EvalRecord {
    std::string image_id;
    Method method = Method::Watershed;
    std::string variant;
    double iou = 0.0;         // ratio in [0,1]
    double runtime_ms = 0.0;
    std::string error;        // empty on success
};

struct EvalSummary {
    std::vector<EvalRecord> records;
    double mean_iou = 0.0;
    std::size_t count = 0;
};

/// |a AND b| / |a OR b|; two empty masks agree perfectly (1.0).
double jaccard(const BinaryMask& pred, const BinaryMask& truth);

/// Runs the selected pipeline over every image in image_dir, scoring each
/// against `<stem><truth_suffix>.png` (fallback `<stem>.png`) in truth_dir.
/// Per-image failures (unreadable files, missing truth, no lesion found)
/// become records with iou 0 and an error note; the batch never aborts.
/// `jobs` bounds the worker threads; records come back sorted by image_id
/// regardless of scheduling.
EvalSummary evaluate_batch(const std::string& image_dir,
                           const std::string& truth_dir, Method method,
                           const PipelineConfig& cfg, int jobs = 1);

/// CSV report: header, one row per record, trailing MEAN row. IoU is a
/// ratio with 6 decimals. The runtime column stays empty unless
/// include_times is set, keeping reports reproducible run to run.
void write_report(const EvalSummary& summary, const std::string& path,
                  bool include_times = false);

std::string render_report(const EvalSummary& summary, bool include_times = false);

/// Draws the prediction boundary in green and, when given, the truth
/// boundary in red over the image. Boundary = mask minus its disk(1)
/// erosion.
RgbImage render_overlay(const RgbImage& img, const BinaryMask& pred,
                        const BinaryMask* truth = nullptr);

}  // namespace lesionseg
