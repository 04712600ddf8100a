#pragma once

#include <string>

#include "cgvs/mask.hpp"
#include "cgvs/metrics.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

/// Decode any PNG as RGB, channels scaled to [0,1].
ColorImage read_color_png(const std::string& path);

/// Decode any PNG as 8-bit grayscale, scaled to [0,1].
Raster read_gray_png(const std::string& path);

/// Grayscale PNG where pixel value > 127 marks the foreground.
Mask read_mask_png(const std::string& path);

/// Write an 8-bit grayscale PNG, pixel = round(255 * clamp(v, 0, 1)).
void write_gray_png(const std::string& path, const Raster& x);

/// Write an 8-bit RGB PNG with the same quantization.
void write_color_png(const std::string& path, const ColorImage& img);

/// One `x,y` pair per line, 0-indexed integer pixel coordinates; blank lines
/// and '#' comments are skipped. Bounds are checked by the metrics that
/// consume the set, not here.
FixationSet read_fixations_csv(const std::string& path);

}  // namespace cgvs
