#include "cgvs/edge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cgvs/features.hpp"
#include "cgvs/filters.hpp"

namespace cgvs {

namespace {

constexpr double kPi = std::numbers::pi;

// Central differences with edge replication.
void gradients(const Raster& x, Raster& gx, Raster& gy) {
    const int w = x.width(), h = x.height();
    gx = Raster(w, h);
    gy = Raster(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            gx.at(px, y) = 0.5 * (x.at_clamped(px + 1, y) - x.at_clamped(px - 1, y));
            gy.at(px, y) = 0.5 * (x.at_clamped(px, y + 1) - x.at_clamped(px, y - 1));
        }
}

double tangent_angle(double gx, double gy) {
    double theta = std::atan2(gy, gx) + kPi / 2.0;
    while (theta < 0.0) theta += kPi;
    while (theta >= kPi) theta -= kPi;
    return theta;
}

// Linear-interpolation quantile of a sorted sample.
double quantile_value(std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

EdgeMap detect_edges(const ColorImage& img, double sigma) {
    if (sigma <= 0.0)
        throw std::invalid_argument("detect_edges: sigma must be > 0");

    const OpponentChannels raw = opponent_channels(img);
    const Raster* channels[3] = {&raw.lum, &raw.rg, &raw.by};

    const int w = img.width(), h = img.height();
    Raster gx[3], gy[3];
    for (int c = 0; c < 3; ++c) {
        Raster smooth = gaussian_smooth(*channels[c], sigma);
        gradients(smooth, gx[c], gy[c]);
    }

    EdgeMap out;
    out.magnitude = Raster(w, h);
    out.orientation = Raster(w, h);
    out.ridges = Mask(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            double best = 0.0;
            int best_c = -1;
            for (int c = 0; c < 3; ++c) {
                const double m = std::hypot(gx[c].at(px, y), gy[c].at(px, y));
                if (m > best) {
                    best = m;
                    best_c = c;
                }
            }
            out.magnitude.at(px, y) = best;
            out.orientation.at(px, y) =
                best_c < 0 ? 0.0
                           : tangent_angle(gx[best_c].at(px, y), gy[best_c].at(px, y));
        }
    out.magnitude = normalize01(out.magnitude);
    return out;
}

EdgeMap extract_ridges(const EdgeMap& edges, double quantile) {
    if (quantile <= 0.0 || quantile >= 1.0)
        throw std::invalid_argument("extract_ridges: quantile must be in (0,1)");

    EdgeMap out = edges;
    out.ridges = Mask(edges.width(), edges.height());

    std::vector<double> nonzero;
    nonzero.reserve(edges.magnitude.size());
    for (std::size_t i = 0; i < edges.magnitude.size(); ++i)
        if (edges.magnitude[i] > 0.0) nonzero.push_back(edges.magnitude[i]);
    if (nonzero.empty()) return out;  // flat image, nothing to keep

    std::sort(nonzero.begin(), nonzero.end());
    const double cut = quantile_value(nonzero, quantile);

    const int w = edges.width(), h = edges.height();
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            const double m = edges.magnitude.at(px, y);
            if (m <= 0.0 || m < cut) continue;

            // Suppress along the gradient normal: the nearest 8-neighbor pair
            // across the tangent. Strict on one side so plateau ties keep
            // exactly one pixel.
            const double phi = edges.orientation.at(px, y) + kPi / 2.0;
            const int dx = static_cast<int>(std::lround(std::cos(phi)));
            const int dy = static_cast<int>(std::lround(std::sin(phi)));
            const double fwd = edges.magnitude.at_clamped(px + dx, y + dy);
            const double bwd = edges.magnitude.at_clamped(px - dx, y - dy);
            if (m > fwd && m >= bwd) out.ridges.set(px, y, true);
        }
    return out;
}

}  // namespace cgvs
