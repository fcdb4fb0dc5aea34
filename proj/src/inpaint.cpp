#include "lesionseg/inpaint.hpp"

#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lesionseg {

namespace {

constexpr float kFar = 1e6f;

enum class State : std::uint8_t { Known, Band, Inside };

struct FrontPixel {
    float t;
    int x;
    int y;
};

struct FrontOrder {
    bool operator()(const FrontPixel& a, const FrontPixel& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.x != b.x) return a.x > b.x;
        return a.y > b.y;
    }
};

using FrontHeap =
    std::priority_queue<FrontPixel, std::vector<FrontPixel>, FrontOrder>;

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

// One upwind candidate of the |grad T| = 1 update from a horizontal value t1
// and a vertical value t2; either side may be kFar when unusable.
float solve_pair(float t1, float t2) {
    const float lo = std::min(t1, t2);
    if (lo >= kFar) return kFar;
    const float d = t1 - t2;
    if (std::abs(d) < 1.0f) {
        return (t1 + t2 + std::sqrt(2.0f - d * d)) * 0.5f;
    }
    return lo + 1.0f;
}

float solve_at(const std::vector<State>& state, const std::vector<float>& t,
               int w, int h, int x, int y) {
    auto val = [&](int nx, int ny) {
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) return kFar;
        const std::size_t idx = static_cast<std::size_t>(ny) * w + nx;
        return state[idx] == State::Known ? t[idx] : kFar;
    };
    const float left = val(x - 1, y);
    const float right = val(x + 1, y);
    const float up = val(x, y - 1);
    const float down = val(x, y + 1);
    float best = solve_pair(left, up);
    best = std::min(best, solve_pair(left, down));
    best = std::min(best, solve_pair(right, up));
    best = std::min(best, solve_pair(right, down));
    return best;
}

// Arrival times on the unmasked side, marched outward from the boundary up
// to `radius`; pixels past that keep kFar. Used (negated) to rank donor
// pixels by how close they sit to the original boundary.
std::vector<float> outside_times(const BinaryMask& mask, int radius,
                                 const std::vector<std::pair<int, int>>& band0) {
    const int w = mask.width;
    const int h = mask.height;
    std::vector<float> t(static_cast<std::size_t>(w) * h, kFar);
    std::vector<State> state(t.size(), State::Inside);
    FrontHeap heap;
    for (const auto& [x, y] : band0) {
        const std::size_t idx = static_cast<std::size_t>(y) * w + x;
        t[idx] = 0.0f;
        state[idx] = State::Band;
        heap.push({0.0f, x, y});
    }
    const float limit = static_cast<float>(radius);
    while (!heap.empty()) {
        const FrontPixel p = heap.top();
        heap.pop();
        const std::size_t pidx = static_cast<std::size_t>(p.y) * w + p.x;
        if (state[pidx] != State::Band) continue;
        state[pidx] = State::Known;
        if (t[pidx] > limit) break;
        for (int k = 0; k < 4; ++k) {
            const int nx = p.x + kDx[k];
            const int ny = p.y + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (mask.data[nidx] || state[nidx] == State::Known) continue;
            const float cand = solve_at(state, t, w, h, nx, ny);
            if (cand < t[nidx]) {
                t[nidx] = cand;
                state[nidx] = State::Band;
                heap.push({cand, nx, ny});
            }
        }
    }
    return t;
}

// Fast-marching fill shared by the gray and color entry points. `channels`
// hold float copies of the image planes; only masked entries are written.
void telea_fill(int w, int h, const BinaryMask& mask, int radius,
                const std::vector<float*>& channels,
                std::vector<int>* fill_order) {
    std::vector<std::pair<int, int>> band0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y)) continue;
            for (int k = 0; k < 4; ++k) {
                const int nx = x + kDx[k];
                const int ny = y + kDy[k];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (mask.at(nx, ny)) {
                    band0.emplace_back(x, y);
                    break;
                }
            }
        }
    }
    if (band0.empty()) return;  // nothing masked, or no valid data at all

    std::vector<float> t = outside_times(mask, radius, band0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!mask.data[i] && t[i] < kFar) t[i] = -t[i];
    }

    std::vector<State> state(t.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        state[i] = mask.data[i] ? State::Inside : State::Known;
    }
    FrontHeap heap;
    for (const auto& [x, y] : band0) {
        const std::size_t idx = static_cast<std::size_t>(y) * w + x;
        state[idx] = State::Band;
        heap.push({0.0f, x, y});
    }

    const int r2 = radius * radius;
    const std::size_t nch = channels.size();
    std::vector<double> num(nch);

    auto paint = [&](int x, int y) {
        const std::size_t idx = static_cast<std::size_t>(y) * w + x;
        auto has = [&](int xx, int yy) {
            return xx >= 0 && xx < w && yy >= 0 && yy < h &&
                   state[static_cast<std::size_t>(yy) * w + xx] != State::Inside;
        };
        auto tv = [&](int xx, int yy) {
            return t[static_cast<std::size_t>(yy) * w + xx];
        };
        float gx = 0.0f;
        if (has(x - 1, y) && has(x + 1, y)) gx = (tv(x + 1, y) - tv(x - 1, y)) * 0.5f;
        else if (has(x + 1, y)) gx = tv(x + 1, y) - t[idx];
        else if (has(x - 1, y)) gx = t[idx] - tv(x - 1, y);
        float gy = 0.0f;
        if (has(x, y - 1) && has(x, y + 1)) gy = (tv(x, y + 1) - tv(x, y - 1)) * 0.5f;
        else if (has(x, y + 1)) gy = tv(x, y + 1) - t[idx];
        else if (has(x, y - 1)) gy = t[idx] - tv(x, y - 1);

        std::fill(num.begin(), num.end(), 0.0);
        double den = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
            const int qy = y + dy;
            if (qy < 0 || qy >= h) continue;
            for (int dx = -radius; dx <= radius; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int d2 = dx * dx + dy * dy;
                if (d2 > r2) continue;
                const int qx = x + dx;
                if (qx < 0 || qx >= w) continue;
                const std::size_t qidx = static_cast<std::size_t>(qy) * w + qx;
                if (state[qidx] != State::Known) continue;
                float dir = std::abs(gx * dx + gy * dy) /
                            std::sqrt(static_cast<float>(d2));
                if (dir < 1e-6f) dir = 1e-6f;
                const float dst = 1.0f / static_cast<float>(d2);
                const float lev = 1.0f / (1.0f + std::abs(t[qidx] - t[idx]));
                const double wgt =
                    static_cast<double>(dir) * dst * lev;
                for (std::size_t c = 0; c < nch; ++c) num[c] += wgt * channels[c][qidx];
                den += wgt;
            }
        }
        if (den <= 0.0) return;
        for (std::size_t c = 0; c < nch; ++c) {
            channels[c][idx] = static_cast<float>(num[c] / den);
        }
    };

    while (!heap.empty()) {
        const FrontPixel p = heap.top();
        heap.pop();
        const std::size_t pidx = static_cast<std::size_t>(p.y) * w + p.x;
        if (state[pidx] != State::Band) continue;
        state[pidx] = State::Known;
        for (int k = 0; k < 4; ++k) {
            const int nx = p.x + kDx[k];
            const int ny = p.y + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (state[nidx] == State::Known) continue;
            const float cand = solve_at(state, t, w, h, nx, ny);
            if (state[nidx] == State::Inside) {
                t[nidx] = cand;
                paint(nx, ny);
                state[nidx] = State::Band;
                heap.push({cand, nx, ny});
                if (fill_order) fill_order->push_back(static_cast<int>(nidx));
            } else if (cand < t[nidx]) {
                t[nidx] = cand;
                heap.push({cand, nx, ny});
            }
        }
    }
}

// Jacobi relaxation shared by the gray and color entry points.
void diffusion_fill(int w, int h, const BinaryMask& mask, int iterations,
                    const std::vector<float*>& channels) {
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const std::size_t masked = mask.count();
    if (masked == 0 || masked == n) return;

    const std::size_t nch = channels.size();
    // Seed: mean of valid 8-neighbors, falling back to the global mean of
    // the unmasked pixels.
    std::vector<double> global(nch, 0.0);
    for (std::size_t c = 0; c < nch; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!mask.data[i]) sum += channels[c][i];
        }
        global[c] = sum / static_cast<double>(n - masked);
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            int cnt = 0;
            std::vector<double> sum(nch, 0.0);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    if (mask.at(nx, ny)) continue;
                    const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                    for (std::size_t c = 0; c < nch; ++c) sum[c] += channels[c][nidx];
                    ++cnt;
                }
            }
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            for (std::size_t c = 0; c < nch; ++c) {
                channels[c][idx] = static_cast<float>(
                    cnt > 0 ? sum[c] / cnt : global[c]);
            }
        }
    }

    // Masked coordinates once; the sweep only ever rewrites these.
    std::vector<std::pair<int, int>> sites;
    sites.reserve(masked);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y)) sites.emplace_back(x, y);
        }
    }

    std::vector<float> cur(n);
    for (std::size_t c = 0; c < nch; ++c) {
        float* plane = channels[c];
        for (int it = 0; it < iterations; ++it) {
            std::copy(plane, plane + n, cur.begin());
            for (const auto& [x, y] : sites) {
                float sum = 0.0f;
                for (int k = 0; k < 4; ++k) {
                    const int nx = clampi(x + kDx[k], 0, w - 1);
                    const int ny = clampi(y + kDy[k], 0, h - 1);
                    sum += cur[static_cast<std::size_t>(ny) * w + nx];
                }
                plane[static_cast<std::size_t>(y) * w + x] = sum * 0.25f;
            }
        }
    }
}

std::vector<float> to_float(const std::vector<std::uint8_t>& v) {
    return std::vector<float>(v.begin(), v.end());
}

}  // namespace

GrayImage inpaint_telea(const GrayImage& img, const BinaryMask& mask,
                        int radius, std::vector<int>* fill_order) {
    require_same_size(img.width, img.height, mask.width, mask.height,
                      "inpaint_telea");
    if (radius < 1) throw std::invalid_argument("inpaint_telea: radius must be >= 1");
    if (fill_order) fill_order->clear();
    std::vector<float> plane = to_float(img.data);
    telea_fill(img.width, img.height, mask, radius, {plane.data()}, fill_order);
    GrayImage out = img;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (mask.data[i]) out.data[i] = clamp_u8(std::lround(plane[i]));
    }
    return out;
}

GrayImage inpaint_diffusion(const GrayImage& img, const BinaryMask& mask,
                            int iterations) {
    require_same_size(img.width, img.height, mask.width, mask.height,
                      "inpaint_diffusion");
    if (iterations < 0) {
        throw std::invalid_argument("inpaint_diffusion: iterations must be >= 0");
    }
    std::vector<float> plane = to_float(img.data);
    diffusion_fill(img.width, img.height, mask, iterations, {plane.data()});
    GrayImage out = img;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (mask.data[i]) out.data[i] = clamp_u8(std::lround(plane[i]));
    }
    return out;
}

RgbImage inpaint_rgb(const RgbImage& img, const BinaryMask& mask,
                     InpaintMethod method, int radius,
                     int diffusion_iterations) {
    require_same_size(img.width, img.height, mask.width, mask.height,
                      "inpaint_rgb");
    const std::size_t n = img.pixel_count();
    std::vector<float> r(n), g(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = img.data[i * 3];
        g[i] = img.data[i * 3 + 1];
        b[i] = img.data[i * 3 + 2];
    }
    const std::vector<float*> planes = {r.data(), g.data(), b.data()};
    if (method == InpaintMethod::Telea) {
        if (radius < 1) throw std::invalid_argument("inpaint_rgb: radius must be >= 1");
        telea_fill(img.width, img.height, mask, radius, planes, nullptr);
    } else {
        if (diffusion_iterations < 0) {
            throw std::invalid_argument("inpaint_rgb: iterations must be >= 0");
        }
        diffusion_fill(img.width, img.height, mask, diffusion_iterations, planes);
    }
    RgbImage out = img;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask.data[i]) continue;
        out.data[i * 3] = clamp_u8(std::lround(r[i]));
        out.data[i * 3 + 1] = clamp_u8(std::lround(g[i]));
        out.data[i * 3 + 2] = clamp_u8(std::lround(b[i]));
    }
    return out;
}

}  // namespace lesionseg
