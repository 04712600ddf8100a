#pragma once

#include "cgvs/bayes.hpp"
#include "cgvs/edge.hpp"
#include "cgvs/mask.hpp"
#include "cgvs/metrics.hpp"
#include "cgvs/raster.hpp"

namespace cgvs::ref {

// Serial, definition-literal implementations of the optimized kernels.
// They share no code with the production paths, are kept deliberately naive,
// and back both the test suites and the speedup benchmarks.

/// O(k^2) per pixel windowed mean, edge replication.
Raster box_mean(const Raster& x, int k);

/// Fully sorted window median, edge replication.
Raster median_filter(const Raster& x, int k);

/// Direct 2-D convolution with the outer-product Gaussian kernel
/// (radius ceil(3*sigma), renormalized), edge replication.
Raster gaussian_smooth(const Raster& x, double sigma);

/// Per-ridge brute force over every image pixel: distance test, side of the
/// tangent line, half means, votes. Returns raw counts.
Raster half_disk_vote_counts(const EdgeMap& edges, int d_r);

/// Likelihood values recomputed per pixel by scanning the pixel sets.
Likelihoods likelihoods(const Partition& part, const FeatureStack& feats,
                        const WeightVector& w, int bins = 32);

/// Mann-Whitney statistic by explicit pair enumeration.
double roc_auc_pairs(const Raster& sal, const FixationSet& fix);

/// Weighted F-score assembled from brute-force building blocks (quadratic
/// nearest-foreground scan, dense filtering).
double weighted_fscore(const Raster& sal, const Mask& gt_mask);

}  // namespace cgvs::ref
