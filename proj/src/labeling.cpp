#include "lesionseg/labeling.hpp"

#include <cstdint>
#include <queue>
#include <vector>

namespace lesionseg {

std::pair<LabelMap, int> connected_components(const BinaryMask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    LabelMap labels(w, h);
    int next = 0;
    std::queue<std::pair<int, int>> frontier;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y) || labels.at(x, y) != 0) continue;
            ++next;
            labels.at(x, y) = next;
            frontier.emplace(x, y);
            while (!frontier.empty()) {
                const auto [cx, cy] = frontier.front();
                frontier.pop();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx;
                        const int ny = cy + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        if (!mask.at(nx, ny) || labels.at(nx, ny) != 0) continue;
                        labels.at(nx, ny) = next;
                        frontier.emplace(nx, ny);
                    }
                }
            }
        }
    }
    return {std::move(labels), next};
}

BinaryMask largest_component(const BinaryMask& mask) {
    const auto [labels, count] = connected_components(mask);
    if (count == 0) return BinaryMask(mask.width, mask.height);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(count) + 1, 0);
    for (const std::int32_t v : labels.labels) ++sizes[static_cast<std::size_t>(v)];
    int best = 1;
    for (int l = 2; l <= count; ++l) {
        if (sizes[static_cast<std::size_t>(l)] > sizes[static_cast<std::size_t>(best)]) best = l;
    }
    BinaryMask out(mask.width, mask.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = labels.labels[i] == best ? 1 : 0;
    }
    return out;
}

}  // namespace lesionseg
