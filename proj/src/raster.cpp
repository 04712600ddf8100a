#include "cgvs/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cgvs {

Raster::Raster(int width, int height, double fill)
    : w_(width), h_(height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("Raster: dimensions must be >= 1");
    v_.assign(static_cast<std::size_t>(width) * height, fill);
}

double Raster::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, w_ - 1);
    y = std::clamp(y, 0, h_ - 1);
    return v_[static_cast<std::size_t>(y) * w_ + x];
}

std::pair<double, double> min_max(const Raster& x) {
    if (x.empty())
        throw std::invalid_argument("min_max: empty raster");
    auto [lo, hi] = std::minmax_element(x.values().begin(), x.values().end());
    return {*lo, *hi};
}

double mean_value(const Raster& x) {
    if (x.empty())
        throw std::invalid_argument("mean_value: empty raster");
    double s = 0.0;
    for (double v : x.values()) s += v;
    return s / static_cast<double>(x.size());
}

Raster normalize01(const Raster& x) {
    auto [lo, hi] = min_max(x);
    Raster out(x.width(), x.height());
    if (hi == lo) return out;  // constant input -> all zeros
    // True division so the extremes land exactly on 0 and 1.
    const double range = hi - lo;
    const std::size_t n = x.size();
#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        out[i] = (x[i] - lo) / range;
    return out;
}

Raster resize_bilinear(const Raster& x, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1)
        throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
    if (new_width == x.width() && new_height == x.height()) return x;

    Raster out(new_width, new_height);
    const double sx = static_cast<double>(x.width()) / new_width;
    const double sy = static_cast<double>(x.height()) / new_height;
#pragma omp parallel for
    for (int y = 0; y < new_height; ++y) {
        const double fy = (y + 0.5) * sy - 0.5;
        const int y0 = static_cast<int>(std::floor(fy));
        const double wy = fy - y0;
        for (int px = 0; px < new_width; ++px) {
            const double fx = (px + 0.5) * sx - 0.5;
            const int x0 = static_cast<int>(std::floor(fx));
            const double wx = fx - x0;
            const double v00 = x.at_clamped(x0, y0);
            const double v10 = x.at_clamped(x0 + 1, y0);
            const double v01 = x.at_clamped(x0, y0 + 1);
            const double v11 = x.at_clamped(x0 + 1, y0 + 1);
            out.at(px, y) = (1.0 - wy) * ((1.0 - wx) * v00 + wx * v10) +
                            wy * ((1.0 - wx) * v01 + wx * v11);
        }
    }
    return out;
}

ColorImage resize_bilinear(const ColorImage& img, int new_width, int new_height) {
    ColorImage out;
    out.r = resize_bilinear(img.r, new_width, new_height);
    out.g = resize_bilinear(img.g, new_width, new_height);
    out.b = resize_bilinear(img.b, new_width, new_height);
    return out;
}

}  // namespace cgvs
