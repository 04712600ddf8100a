#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cgvs/config.hpp"
#include "cgvs/features.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

/// Per-channel mixing weights, kept on the simplex (sum 1, nonnegative).
struct WeightVector {
    std::array<double, kNumChannels> w{0.25, 0.25, 0.25, 0.25};

    double operator[](int i) const { return w[i]; }
    double sum() const { return w[0] + w[1] + w[2] + w[3]; }
};

inline WeightVector uniform_weights() { return WeightVector{}; }

/// Structure/background split of the pixel grid at the winning size
/// threshold. The structure fraction is always inside [0.10, 0.50].
struct Partition {
    double t_max = 0.0;  // winning size fraction from the grid
    std::vector<std::uint32_t> structure_set;   // ascending pixel indices
    std::vector<std::uint32_t> background_set;  // ascending pixel indices
    std::array<double, kNumChannels> mean_s{};  // per-channel structure means
    std::array<double, kNumChannels> mean_b{};  // per-channel background means
};

struct Likelihoods {
    Raster p_x_s, p_x_b;
};

struct PosteriorMap {
    Raster p_sx;
    WeightVector weights;    // weights of the final round
    Partition partition;     // partition of the final round
    int iteration = 0;       // number of refinement rounds run after round 0
    std::vector<WeightVector> round_weights;  // one entry per round, round 0 first
};

/// Sweep the size grid {10%,12%,...,50%}: for each candidate take that
/// fraction of highest-prior pixels (ties to the smaller row-major index)
/// and score the split by the weighted feature-mean separation
/// sqrt(sum_i (w0_i (mean_s_i - mean_b_i))^2). Score ties resolve to the
/// smaller size.
Partition search_threshold(const Raster& prior, const FeatureStack& feats,
                           const WeightVector& w0);

/// w_i proportional to |mean_s_i - mean_b_i|, normalized to sum 1; uniform
/// when all channel means coincide.
WeightVector compute_weights(const Partition& part, const FeatureStack& feats);

/// Per-channel histograms (Laplace-smoothed, `bins` cells over [0,1]) of the
/// structure and background sets, combined per pixel as a weighted product of
/// bin masses, evaluated in log space.
Likelihoods likelihoods(const Partition& part, const FeatureStack& feats,
                        const WeightVector& w, int bins = 32);

/// p(s|x) = p(s)p(x|s) / (p(s)p(x|s) + p(b)p(x|b)) with the prior clamped
/// into [1e-6, 1-1e-6].
Raster posterior(const Raster& prior, const Raster& p_x_s, const Raster& p_x_b);

/// Round 0 runs threshold search, weighting, likelihoods and the posterior
/// with uniform initial weights. Each further round (up to `iterations`)
/// restarts from the 21x21-median-filtered, renormalized posterior and the
/// previous round's weights.
PosteriorMap cgvs_iterate(const Raster& prior0, const FeatureStack& feats,
                          int iterations, int bins = 32);

/// Full pipeline: edges, ridges, spatial prior, feature stack, iteration.
/// Images larger than cfg.working_resolution_cap are processed downscaled
/// and the posterior is upscaled back to the input size.
PosteriorMap cgvs_detect(const ColorImage& img, int iterations, const RunConfig& cfg);

}  // namespace cgvs
