#include "cgvs/mask.hpp"

#include <stdexcept>

namespace cgvs {

Mask::Mask(int width, int height, bool fill) : w_(width), h_(height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("Mask: dimensions must be >= 1");
    v_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

Mask threshold_mask(const Raster& x, double threshold) {
    Mask m(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i)
        m.set(i, x[i] >= threshold);
    return m;
}

std::size_t count(const Mask& m) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) ++n;
    return n;
}

double mask_iou(const Mask& a, const Mask& b) {
    if (!a.same_size(b))
        throw std::invalid_argument("mask_iou: dimension mismatch");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) ++inter;
        if (a[i] || b[i]) ++uni;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Mask dilate_disk(const Mask& m, int radius) {
    if (radius < 0)
        throw std::invalid_argument("dilate_disk: radius must be >= 0");
    if (radius == 0) return m;
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius)
                offsets.emplace_back(dx, dy);

    Mask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            if (!m.at(x, y)) continue;
            for (auto [dx, dy] : offsets)
                if (m.in_bounds(x + dx, y + dy)) out.set(x + dx, y + dy, true);
        }
    return out;
}

Mask connected_component(const Mask& m, int seed_x, int seed_y) {
    Mask out(m.width(), m.height());
    if (!m.in_bounds(seed_x, seed_y) || !m.at(seed_x, seed_y)) return out;

    std::vector<std::pair<int, int>> stack{{seed_x, seed_y}};
    out.set(seed_x, seed_y, true);
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (!m.in_bounds(nx, ny) || !m.at(nx, ny) || out.at(nx, ny)) continue;
                out.set(nx, ny, true);
                stack.emplace_back(nx, ny);
            }
    }
    return out;
}

}  // namespace cgvs
