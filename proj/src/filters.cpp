#include "cgvs/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cgvs {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

void check_window(int k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("window size must be odd and >= 1");
}

}  // namespace

Raster gaussian_smooth(const Raster& x, double sigma) {
    if (sigma <= 0.0)
        throw std::invalid_argument("gaussian_smooth: sigma must be > 0");
    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    const int w = x.width(), h = x.height();

    Raster tmp(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * x.at_clamped(px + i, y);
            tmp.at(px, y) = acc;
        }

    Raster out(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * tmp.at_clamped(px, y + i);
            out.at(px, y) = acc;
        }
    return out;
}

Raster box_mean(const Raster& x, int k) {
    check_window(k);
    if (k == 1) return x;
    const int r = k / 2;
    const int w = x.width(), h = x.height();
    const double inv = 1.0 / k;

    // Horizontal pass, one sliding sum per row.
    Raster tmp(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        double sum = 0.0;
        for (int i = -r; i <= r; ++i) sum += x.at_clamped(i, y);
        tmp.at(0, y) = sum * inv;
        for (int px = 1; px < w; ++px) {
            sum += x.at_clamped(px + r, y) - x.at_clamped(px - 1 - r, y);
            tmp.at(px, y) = sum * inv;
        }
    }

    // Vertical pass.
    Raster out(w, h);
#pragma omp parallel for
    for (int px = 0; px < w; ++px) {
        double sum = 0.0;
        for (int i = -r; i <= r; ++i) sum += tmp.at_clamped(px, i);
        out.at(px, 0) = sum * inv;
        for (int y = 1; y < h; ++y) {
            sum += tmp.at_clamped(px, y + r) - tmp.at_clamped(px, y - 1 - r);
            out.at(px, y) = sum * inv;
        }
    }
    return out;
}

Raster median_filter(const Raster& x, int k) {
    check_window(k);
    if (k == 1) return x;
    const int r = k / 2;
    const int w = x.width(), h = x.height();

    Raster out(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        std::vector<double> window;
        window.reserve(static_cast<std::size_t>(k) * k);
        for (int px = 0; px < w; ++px) {
            window.clear();
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    window.push_back(x.at_clamped(px + dx, y + dy));
            auto mid = window.begin() + window.size() / 2;
            std::nth_element(window.begin(), mid, window.end());
            out.at(px, y) = *mid;
        }
    }
    return out;
}

}  // namespace cgvs
