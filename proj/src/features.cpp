#include "cgvs/features.hpp"

#include <stdexcept>

#include "cgvs/edge.hpp"
#include "cgvs/filters.hpp"

namespace cgvs {

OpponentChannels opponent_channels(const ColorImage& img) {
    const int w = img.width(), h = img.height();
    if (!img.g.same_size(img.r) || !img.b.same_size(img.r))
        throw std::invalid_argument("opponent_channels: channel dimension mismatch");

    OpponentChannels out{Raster(w, h), Raster(w, h), Raster(w, h)};
    const std::size_t n = img.r.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.r[i], g = img.g[i], b = img.b[i];
        out.lum[i] = (r + g + b) / 3.0;
        out.rg[i] = r - g;
        out.by[i] = b - (r + g) / 2.0;
    }
    return out;
}

FeatureStack build_feature_stack(const ColorImage& img, const EdgeMap& edges,
                                 double sigma) {
    if (img.width() != edges.width() || img.height() != edges.height())
        throw std::invalid_argument("build_feature_stack: image/edge dimension mismatch");
    if (sigma <= 0.0)
        throw std::invalid_argument("build_feature_stack: sigma must be > 0");

    const OpponentChannels raw = opponent_channels(img);
    FeatureStack out;
    out.lum = normalize01(gaussian_smooth(raw.lum, sigma));
    out.rg = normalize01(gaussian_smooth(raw.rg, sigma));
    out.by = normalize01(gaussian_smooth(raw.by, sigma));
    out.ed = normalize01(box_mean(edges.magnitude, 11));
    return out;
}

}  // namespace cgvs
