#pragma once

#include "cgvs/raster.hpp"

namespace cgvs {

/// Separable Gaussian convolution. Kernel truncated at radius ceil(3*sigma)
/// and renormalized to sum 1; borders replicate the edge pixel.
Raster gaussian_smooth(const Raster& x, double sigma);

/// Mean over a k x k window (k odd), edge replication. Sliding-window sums,
/// so the cost does not depend on k.
Raster box_mean(const Raster& x, int k);

/// Median over a k x k window (k odd), edge replication.
Raster median_filter(const Raster& x, int k);

}  // namespace cgvs
