#include "lesionseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "lesionseg/errors.hpp"
#include "lesionseg/image_io.hpp"
#include "lesionseg/rng.hpp"

namespace fs = std::filesystem;

namespace lesionseg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint8_t noisy(double base, double noise) { return clamp_u8(std::lround(base + noise)); }

}  // namespace

SynthSample make_synth_sample(std::uint64_t seed, int index, int size, bool hair,
                              bool vignette) {
    if (size < 16) throw std::invalid_argument("make_synth_sample: size must be >= 16");
    const double s = static_cast<double>(size);

    // Independent streams so the same (seed, index) keeps the identical base
    // image whether or not hair or vignette are layered on.
    Rng rng_base(mix_seed(seed, static_cast<std::uint64_t>(index) * 4 + 0));
    Rng rng_noise(mix_seed(seed, static_cast<std::uint64_t>(index) * 4 + 1));
    Rng rng_hair(mix_seed(seed, static_cast<std::uint64_t>(index) * 4 + 2));
    Rng rng_vig(mix_seed(seed, static_cast<std::uint64_t>(index) * 4 + 3));

    const double skin = rng_base.uniform(180.0, 220.0);
    const double skin_rgb[3] = {skin + 8.0, skin - 3.0, skin - 12.0};
    const double lesion = rng_base.uniform(40.0, 90.0);
    const double lesion_rgb[3] = {lesion + 14.0, lesion + 2.0, lesion - 6.0};
    const double cx = s / 2.0 + rng_base.uniform(-s / 12.0, s / 12.0);
    const double cy = s / 2.0 + rng_base.uniform(-s / 12.0, s / 12.0);
    const double ea = rng_base.uniform(s / 8.0, s / 5.0);
    const double eb = rng_base.uniform(s / 8.0, s / 5.0);
    const double theta = rng_base.uniform(0.0, kPi);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    // Real lesion borders fade into skin instead of stepping; the ramp is
    // symmetric about the analytic boundary, so the truth mask stays exact.
    const double feather = rng_base.uniform(3.0, 6.0);
    // Slow illumination tilt across the field, as dermoscopy lighting has.
    const double tilt_amp = rng_base.uniform(4.0, 10.0);
    const double tilt_dir = rng_base.uniform(0.0, 2.0 * kPi);
    // Variegated interior: islands of lighter pigment, midway between lesion
    // and skin tone. Kept well clear of the margin (and of each other) so the
    // dark corridor around an island stays wider than any closing the
    // pipelines apply; the truth mask is unaffected.
    struct Patch {
        double cx, cy, r, rgb[3];
    };
    const double minr = std::min(ea, eb);
    const int patch_want = rng_base.uniform_int(2, 4);
    Patch patches[4];
    int patch_count = 0;
    for (int i = 0; i < patch_want; ++i) {
        for (int tries = 0; tries < 20; ++tries) {
            const double pr = rng_base.uniform(9.0, 14.0);
            const double budget = (minr - 46.0 - pr) / minr;
            if (budget <= 0.02) break;
            const double pm = rng_base.uniform(0.0, std::min(0.55, budget));
            const double pang = rng_base.uniform(0.0, 2.0 * kPi);
            const double pu = pm * std::cos(pang);
            const double pv = pm * std::sin(pang);
            const double pcx = cx + (pu * ea) * ct - (pv * eb) * st;
            const double pcy = cy + (pu * ea) * st + (pv * eb) * ct;
            bool ok = true;
            for (int j = 0; j < patch_count; ++j) {
                const double ddx = pcx - patches[j].cx;
                const double ddy = pcy - patches[j].cy;
                if (std::sqrt(ddx * ddx + ddy * ddy) < pr + patches[j].r + 45.0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            patches[patch_count].cx = pcx;
            patches[patch_count].cy = pcy;
            patches[patch_count].r = pr;
            const double pl = skin - rng_base.uniform(26.0, 38.0);
            patches[patch_count].rgb[0] = pl + 8.0;
            patches[patch_count].rgb[1] = pl - 1.0;
            patches[patch_count].rgb[2] = pl - 8.0;
            ++patch_count;
            break;
        }
    }
    const double vig_value = rng_base.uniform(8.0, 25.0);
    const double vig_radius = 0.485 * s;

    const double tilt_x = std::cos(tilt_dir) / s;
    const double tilt_y = std::sin(tilt_dir) / s;

    SynthSample sample;
    sample.image = RgbImage(size, size);
    sample.truth = BinaryMask(size, size);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "synth_%03d", index);
    sample.name = buf;

    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dx = (x + 0.5) - cx;
            const double dy = (y + 0.5) - cy;
            const double u = (dx * ct + dy * st) / ea;
            const double v = (-dx * st + dy * ct) / eb;
            const double m = std::sqrt(u * u + v * v);
            const bool inside = m <= 1.0;
            sample.truth.set(x, y, inside);
            // First-order signed pixel distance to the ellipse boundary;
            // alpha ramps lesion -> skin across it, centred on the truth edge.
            const double gx = u * ct / ea - v * st / eb;
            const double gy = u * st / ea + v * ct / eb;
            const double grad = std::sqrt(gx * gx + gy * gy);
            const double dist = grad > 1e-9 ? (m - 1.0) * m / grad : -s;
            const double a = std::clamp(0.5 + dist / feather, 0.0, 1.0);
            const double alpha = a * a * (3.0 - 2.0 * a);
            const double shade =
                tilt_amp * (((x + 0.5) - s / 2.0) * tilt_x + ((y + 0.5) - s / 2.0) * tilt_y);
            double interior[3] = {lesion_rgb[0], lesion_rgb[1], lesion_rgb[2]};
            for (int i = 0; i < patch_count; ++i) {
                const double pdx = (x + 0.5) - patches[i].cx;
                const double pdy = (y + 0.5) - patches[i].cy;
                const double pd = std::sqrt(pdx * pdx + pdy * pdy) - patches[i].r;
                const double pa = std::clamp(0.5 + pd / 4.0, 0.0, 1.0);
                if (pa >= 1.0) continue;
                for (int c = 0; c < 3; ++c) {
                    interior[c] = patches[i].rgb[c] * (1.0 - pa) + interior[c] * pa;
                }
            }
            std::uint8_t* px = sample.image.px(x, y);
            for (int c = 0; c < 3; ++c) {
                const double base = interior[c] * (1.0 - alpha) + skin_rgb[c] * alpha;
                px[c] = noisy(base + shade, rng_noise.gaussian(0.0, 8.0));
            }
        }
    }

    if (hair) {
        for (int stroke = 0; stroke < 30; ++stroke) {
            const double x0 = rng_hair.uniform(0.0, s);
            const double y0 = rng_hair.uniform(0.0, s);
            const double phi = rng_hair.uniform(0.0, 2.0 * kPi);
            const double len = rng_hair.uniform(0.4 * s, 0.9 * s);
            const int width = rng_hair.uniform_int(2, 3);
            const double val = rng_hair.uniform(15.0, 60.0);
            const double hair_rgb[3] = {val + 6.0, val, val - 4.0};
            const double amp = rng_hair.uniform(2.0, 6.0);
            const double freq = rng_hair.uniform(0.02, 0.06);
            const double phase = rng_hair.uniform(0.0, 2.0 * kPi);
            const double cphi = std::cos(phi);
            const double sphi = std::sin(phi);
            const int steps = static_cast<int>(len * 2.0);
            for (int i = 0; i <= steps; ++i) {
                const double t = i * 0.5;
                const double wob = amp * std::sin(freq * t + phase);
                const int px = static_cast<int>(std::lround(x0 + t * cphi - wob * sphi));
                const int py = static_cast<int>(std::lround(y0 + t * sphi + wob * cphi));
                for (int oy = 0; oy < width; ++oy) {
                    for (int ox = 0; ox < width; ++ox) {
                        const int xx = px + ox;
                        const int yy = py + oy;
                        if (!sample.image.in_bounds(xx, yy)) continue;
                        sample.image.set(xx, yy, clamp_u8(hair_rgb[0]),
                                         clamp_u8(hair_rgb[1]), clamp_u8(hair_rgb[2]));
                    }
                }
            }
        }
    }

    if (vignette) {
        for (int y = 0; y < size; ++y) {
            for (int x = 0; x < size; ++x) {
                const double dx = (x + 0.5) - s / 2.0;
                const double dy = (y + 0.5) - s / 2.0;
                if (dx * dx + dy * dy <= vig_radius * vig_radius) continue;
                std::uint8_t* px = sample.image.px(x, y);
                for (int c = 0; c < 3; ++c) {
                    px[c] = noisy(vig_value, rng_vig.gaussian(0.0, 3.0));
                }
            }
        }
    }

    return sample;
}

void generate_dataset(const std::string& out_dir, const SynthOptions& opt) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw IoError(IoError::Kind::Unwritable,
                      "generate: cannot create directory " + out_dir);
    }
    for (int i = 0; i < opt.count; ++i) {
        const SynthSample sample =
            make_synth_sample(opt.seed, i, opt.size, opt.hair, opt.vignette);
        const fs::path img_path = fs::path(out_dir) / (sample.name + ".png");
        const fs::path mask_path =
            fs::path(out_dir) / (sample.name + "_segmentation.png");
        save_rgb(sample.image, img_path.string());
        save_mask(sample.truth, mask_path.string());
    }
}

}  // namespace lesionseg
