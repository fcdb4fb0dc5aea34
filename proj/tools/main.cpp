#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lesionseg/config.hpp"
#include "lesionseg/errors.hpp"
#include "lesionseg/eval.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/pipeline_meanshift.hpp"
#include "lesionseg/pipeline_watershed.hpp"
#include "lesionseg/synth.hpp"

namespace {

using namespace lesionseg;

std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// --config beats LESIONSEG_CONFIG beats built-in defaults; --set overrides
// apply last.
PipelineConfig resolve_config(const std::string& config_path,
                              const std::vector<std::string>& sets) {
    PipelineConfig cfg;
    std::string path = config_path;
    if (path.empty()) {
        const char* env = std::getenv("LESIONSEG_CONFIG");
        if (env && *env) path = env;
    }
    if (!path.empty()) cfg = load_config_file(path);
    for (const std::string& kv : sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        }
        apply_override(cfg, strip(kv.substr(0, eq)), strip(kv.substr(eq + 1)));
    }
    validate_config(cfg);
    return cfg;
}

Method parse_method(const std::string& name) {
    return name == "watershed" ? Method::Watershed : Method::Meanshift;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skin lesion segmentation toolkit"};
    app.require_subcommand(1);

    std::string method_name_arg;
    std::string in_path, out_path, overlay_path, config_path, report_path;
    std::string images_dir, truth_dir, gen_dir;
    std::vector<std::string> sets;
    int jobs = 1;
    bool with_times = false;
    int gen_count = 20;
    std::uint64_t gen_seed = 7;
    int gen_size = 512;
    bool gen_hair = false;
    bool gen_vignette = false;

    const auto method_check = CLI::IsMember({"watershed", "meanshift"});

    CLI::App* seg = app.add_subcommand("segment", "segment one image to a binary mask");
    seg->add_option("--method", method_name_arg, "pipeline to run")
        ->required()
        ->check(method_check);
    seg->add_option("--in", in_path, "input image (png/ppm/pgm/jpg)")->required();
    seg->add_option("--out", out_path, "output mask path (png/pgm)")->required();
    seg->add_option("--overlay", overlay_path, "also write a boundary overlay image");
    seg->add_option("--config", config_path, "config file (key = value lines)");
    seg->add_option("--set", sets, "override one config key, e.g. --set median_radius=3");

    CLI::App* ev = app.add_subcommand("evaluate", "score a directory against ground truth");
    ev->add_option("--method", method_name_arg, "pipeline to run")
        ->required()
        ->check(method_check);
    ev->add_option("--images", images_dir, "directory of input images")->required();
    ev->add_option("--truth", truth_dir, "directory of ground-truth masks")->required();
    ev->add_option("--report", report_path, "CSV report output path")->required();
    ev->add_option("--config", config_path, "config file (key = value lines)");
    ev->add_option("--set", sets, "override one config key");
    ev->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    ev->add_flag("--times", with_times,
                 "record per-image runtimes in the CSV (breaks run-to-run byte equality)");

    CLI::App* gen = app.add_subcommand("generate", "write a synthetic lesion dataset");
    gen->add_option("--out", gen_dir, "output directory")->required();
    gen->add_option("--count", gen_count, "number of images")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("--size", gen_size, "square image side in pixels")
        ->check(CLI::Range(16, 4096));
    gen->add_flag("--hair", gen_hair, "draw dark hair strokes");
    gen->add_flag("--vignette", gen_vignette, "draw a dark circular border");

    CLI::App* dump = app.add_subcommand("dump-config", "print the effective config");
    dump->add_option("--config", config_path, "config file (key = value lines)");
    dump->add_option("--set", sets, "override one config key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (seg->parsed()) {
            const PipelineConfig cfg = resolve_config(config_path, sets);
            const RgbImage img = load_image(in_path);
            const Method method = parse_method(method_name_arg);
            const BinaryMask mask = method == Method::Watershed
                                        ? segment_method1(img, cfg)
                                        : segment_method2(img, cfg);
            save_mask(mask, out_path);
            if (!overlay_path.empty()) {
                save_rgb(render_overlay(img, mask), overlay_path);
            }
        } else if (ev->parsed()) {
            const PipelineConfig cfg = resolve_config(config_path, sets);
            const EvalSummary summary = evaluate_batch(
                images_dir, truth_dir, parse_method(method_name_arg), cfg, jobs);
            write_report(summary, report_path, with_times);
            std::printf("mean IoU: %.2f%%\n", summary.mean_iou * 100.0);
        } else if (gen->parsed()) {
            SynthOptions opt;
            opt.count = gen_count;
            opt.seed = gen_seed;
            opt.size = gen_size;
            opt.hair = gen_hair;
            opt.vignette = gen_vignette;
            generate_dataset(gen_dir, opt);
        } else if (dump->parsed()) {
            const PipelineConfig cfg = resolve_config(config_path, sets);
            std::fputs(serialize_config(cfg).c_str(), stdout);
        }
    } catch (const NoLesionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
