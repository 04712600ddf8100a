#pragma once

#include <array>
#include <utility>

#include "cgvs/raster.hpp"

namespace cgvs {

struct EdgeMap;

/// Channel order used everywhere a four-vector is indexed.
enum Channel : int { kLum = 0, kRg = 1, kBy = 2, kEd = 3 };
inline constexpr int kNumChannels = 4;
inline constexpr std::array<const char*, kNumChannels> kChannelNames = {
    "lum", "rg", "by", "ed"};

/// Unsmoothed luminance and color-opponent channels:
///   lum = (r+g+b)/3,  rg = r-g,  by = b-(r+g)/2.
struct OpponentChannels {
    Raster lum, rg, by;
};

OpponentChannels opponent_channels(const ColorImage& img);

/// The four local feature channels, each normalized to [0,1].
struct FeatureStack {
    Raster lum, rg, by, ed;

    const Raster& channel(int i) const {
        switch (i) {
            case kLum: return lum;
            case kRg: return rg;
            case kBy: return by;
            default: return ed;
        }
    }
    Raster& channel(int i) {
        return const_cast<Raster&>(std::as_const(*this).channel(i));
    }
    int width() const { return lum.width(); }
    int height() const { return lum.height(); }
};

/// lum/rg/by: opponent channel, Gaussian-smoothed, normalized.
/// ed: 11x11 box mean of the edge magnitude, normalized.
FeatureStack build_feature_stack(const ColorImage& img, const EdgeMap& edges,
                                 double sigma);

}  // namespace cgvs
