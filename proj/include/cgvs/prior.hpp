#pragma once

#include "cgvs/edge.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

/// Spatial prior built along the non-selective pathway: ridge votes (s_e),
/// center bias (s_c) and their normalized sum (s_w).
struct PriorMap {
    Raster s_e, s_c, s_w;
    int d_r = 0;
    double sigma_c = 0.0;
};

/// Raw vote counts. Each ridge pixel splits its radius-d_r disk along its
/// tangent; every pixel in the half with the strictly higher mean edge
/// magnitude gains one vote. Pixels on the splitting line belong to neither
/// half; equal means cast no votes.
Raster half_disk_vote_counts(const EdgeMap& edges, int d_r);

/// normalize01 of the vote counts.
Raster half_disk_vote(const EdgeMap& edges, int d_r);

/// Gaussian centered on ((W-1)/2, (H-1)/2) with std sigma_c, normalized.
Raster center_bias(int width, int height, double sigma_c);

/// normalize01(s_e + s_c).
Raster compose_prior(const Raster& s_e, const Raster& s_c);

/// d_r and sigma_c both default to factor * min(W,H).
PriorMap build_prior(const EdgeMap& edges, double d_r_factor, double sigma_c_factor);

}  // namespace cgvs
