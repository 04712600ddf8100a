#pragma once

#include "cgvs/mask.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

struct EdgeMap {
    /// Gradient magnitude, normalized to [0,1].
    Raster magnitude;
    /// Edge tangent angle in [0, pi). 0 by convention where magnitude == 0.
    Raster orientation;
    /// Dominant-edge pixels (filled by extract_ridges).
    Mask ridges;

    int width() const { return magnitude.width(); }
    int height() const { return magnitude.height(); }
};

/// Gradient field over the smoothed luminance and opponent channels.
/// Per pixel the strongest channel wins: magnitude is the normalized maximum
/// of the three channel magnitudes and orientation is that channel's tangent
/// direction (gradient direction rotated by pi/2, reduced into [0, pi)).
EdgeMap detect_edges(const ColorImage& img, double sigma);

/// Non-maximum suppression across the tangent followed by a quantile cut:
/// survivors keep their ridge flag if magnitude >= the given quantile of all
/// nonzero magnitudes.
EdgeMap extract_ridges(const EdgeMap& edges, double quantile);

}  // namespace cgvs
