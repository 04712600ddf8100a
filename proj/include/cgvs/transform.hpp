#pragma once

#include <vector>

#include "cgvs/bayes.hpp"
#include "cgvs/mask.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

/// 2-D Gaussian fitted to a saliency distribution by weighted moments.
struct GaussianPrior {
    double mean_x = 0.0, mean_y = 0.0;
    double cov_xx = 0.0, cov_xy = 0.0, cov_yy = 0.0;
    Raster raster;            // normalized density on the pixel grid
    bool mean_fallback = false;  // no saliency mass, mean moved to image center
    bool cov_fallback = false;   // singular moments, isotropic default std
};

/// Fit a Gaussian to sal weighted pointwise by the center raster. Zero total
/// weight falls back to an image-centered Gaussian; a singular covariance
/// keeps the fitted mean and falls back to std min(W,H)/3 per axis.
GaussianPrior fit_gaussian_prior(const Raster& sal, const Raster& center);

/// Rebuild salient structure from an external saliency map: the fitted
/// Gaussian replaces the edge-voting prior, the rest of the pipeline runs
/// unchanged. sal is resampled to the image size when it differs.
PosteriorMap transform_saliency(const ColorImage& img, const Raster& sal,
                                int iterations, const RunConfig& cfg,
                                GaussianPrior* fitted = nullptr,
                                bool* resampled = nullptr);

struct SearchStep {
    int x = 0, y = 0;       // attended point
    Mask object;            // detected object mask, disjoint from earlier steps
    WeightVector weights;   // feature weights of this step's inference round
    Raster residual;        // saliency left after this step's inhibition
};

struct SearchTrace {
    std::vector<SearchStep> steps;
};

/// Winner-take-all over the residual saliency, one localized inference round
/// per winner, inhibition-of-return by zeroing the detected mask (dilated).
/// Stops early once the residual peak drops below cfg.residual_stop.
SearchTrace multi_object_search(const ColorImage& img, const Raster& init_sal,
                                int k_max, const RunConfig& cfg);

}  // namespace cgvs
