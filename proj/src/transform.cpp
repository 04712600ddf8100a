#include "cgvs/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cgvs/edge.hpp"
#include "cgvs/prior.hpp"

namespace cgvs {

namespace {

constexpr double kSingularDet = 1e-9;

Raster gaussian_raster(int w, int h, double mx, double my, double cov_xx,
                       double cov_xy, double cov_yy) {
    const double det = cov_xx * cov_yy - cov_xy * cov_xy;
    // Inverse covariance, closed form.
    const double ixx = cov_yy / det, iyy = cov_xx / det, ixy = -cov_xy / det;
    Raster out(w, h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            const double dx = px - mx, dy = y - my;
            const double q = ixx * dx * dx + 2.0 * ixy * dx * dy + iyy * dy * dy;
            out.at(px, y) = std::exp(-0.5 * q);
        }
    return normalize01(out);
}

}  // namespace

GaussianPrior fit_gaussian_prior(const Raster& sal, const Raster& center) {
    if (!sal.same_size(center))
        throw std::invalid_argument("fit_gaussian_prior: dimension mismatch");

    const int w = sal.width(), h = sal.height();
    const double fallback_var = std::pow(std::min(w, h) / 3.0, 2);

    GaussianPrior out;
    double total = 0.0, sx = 0.0, sy = 0.0;
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            const double m = sal.at(px, y) * center.at(px, y);
            total += m;
            sx += m * px;
            sy += m * y;
        }

    if (total <= 0.0) {
        out.mean_fallback = true;
        out.cov_fallback = true;
        out.mean_x = (w - 1) / 2.0;
        out.mean_y = (h - 1) / 2.0;
        out.cov_xx = out.cov_yy = fallback_var;
        out.cov_xy = 0.0;
        out.raster = gaussian_raster(w, h, out.mean_x, out.mean_y, out.cov_xx,
                                     out.cov_xy, out.cov_yy);
        return out;
    }

    out.mean_x = sx / total;
    out.mean_y = sy / total;

    double cxx = 0.0, cxy = 0.0, cyy = 0.0;
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px) {
            const double m = sal.at(px, y) * center.at(px, y);
            const double dx = px - out.mean_x, dy = y - out.mean_y;
            cxx += m * dx * dx;
            cxy += m * dx * dy;
            cyy += m * dy * dy;
        }
    cxx /= total;
    cxy /= total;
    cyy /= total;

    if (cxx * cyy - cxy * cxy <= kSingularDet) {
        out.cov_fallback = true;
        cxx = cyy = fallback_var;
        cxy = 0.0;
    }
    out.cov_xx = cxx;
    out.cov_xy = cxy;
    out.cov_yy = cyy;
    out.raster = gaussian_raster(w, h, out.mean_x, out.mean_y, cxx, cxy, cyy);
    return out;
}

PosteriorMap transform_saliency(const ColorImage& img, const Raster& sal,
                                int iterations, const RunConfig& cfg,
                                GaussianPrior* fitted, bool* resampled) {
    cfg.validate();
    const int ow = img.width(), oh = img.height();

    Raster map = sal;
    bool did_resample = false;
    if (!sal.same_size(img.r)) {
        map = resize_bilinear(sal, ow, oh);
        did_resample = true;
    }
    // Renormalize so affine rescalings of the input map cannot matter.
    map = normalize01(map);

    ColorImage work = img;
    const int longest = std::max(ow, oh);
    if (longest > cfg.working_resolution_cap) {
        const double s = static_cast<double>(cfg.working_resolution_cap) / longest;
        const int nw = std::max(1, static_cast<int>(std::lround(ow * s)));
        const int nh = std::max(1, static_cast<int>(std::lround(oh * s)));
        work = resize_bilinear(img, nw, nh);
        map = resize_bilinear(map, nw, nh);
    }

    const int m = std::min(work.width(), work.height());
    const Raster s_c = center_bias(work.width(), work.height(),
                                   std::max(1e-6, cfg.sigma_c_factor * m));
    GaussianPrior prior = fit_gaussian_prior(map, s_c);

    EdgeMap edges = detect_edges(work, cfg.sigma_edge);
    const FeatureStack feats = build_feature_stack(work, edges, cfg.sigma_edge);

    PosteriorMap out = cgvs_iterate(prior.raster, feats, iterations, cfg.histogram_bins);
    if (work.width() != ow || work.height() != oh) {
        // Report the fit in input-image coordinates.
        const double fx = static_cast<double>(ow) / work.width();
        const double fy = static_cast<double>(oh) / work.height();
        prior.mean_x *= fx;
        prior.mean_y *= fy;
        prior.cov_xx *= fx * fx;
        prior.cov_xy *= fx * fy;
        prior.cov_yy *= fy * fy;
        out.p_sx = resize_bilinear(out.p_sx, ow, oh);
    }
    if (fitted) *fitted = prior;
    if (resampled) *resampled = did_resample;
    return out;
}

SearchTrace multi_object_search(const ColorImage& img, const Raster& init_sal,
                                int k_max, const RunConfig& cfg) {
    if (k_max < 1)
        throw std::invalid_argument("multi_object_search: k_max must be >= 1");
    if (!init_sal.same_size(img.r))
        throw std::invalid_argument("multi_object_search: saliency/image dimension mismatch");
    cfg.validate();

    const int w = img.width(), h = img.height();
    const int d_r = std::max(1, static_cast<int>(std::lround(cfg.d_r_factor * std::min(w, h))));

    EdgeMap edges = detect_edges(img, cfg.sigma_edge);
    const FeatureStack feats = build_feature_stack(img, edges, cfg.sigma_edge);

    SearchTrace trace;
    Raster residual = init_sal;
    Mask claimed(w, h);

    for (int k = 0; k < k_max; ++k) {
        // Winner-take-all over what is left.
        std::size_t arg = 0;
        double peak = residual[0];
        for (std::size_t i = 1; i < residual.size(); ++i)
            if (residual[i] > peak) {
                peak = residual[i];
                arg = i;
            }
        if (peak < cfg.residual_stop) break;
        const int ax = static_cast<int>(arg % w);
        const int ay = static_cast<int>(arg / w);

        // One inference round under a prior localized at the winner.
        const double var = 2.0 * d_r * d_r;
        Raster local(w, h);
        for (int y = 0; y < h; ++y)
            for (int px = 0; px < w; ++px) {
                const double dx = px - ax, dy = y - ay;
                local.at(px, y) = std::exp(-(dx * dx + dy * dy) / var);
            }
        local = normalize01(local);

        Partition part = search_threshold(local, feats, uniform_weights());
        const WeightVector wv = compute_weights(part, feats);
        const Likelihoods lik = likelihoods(part, feats, wv, cfg.histogram_bins);
        const Raster post = posterior(local, lik.p_x_s, lik.p_x_b);

        // Object = thresholded posterior around the winner, minus anything an
        // earlier step already claimed.
        Mask hot = threshold_mask(post, 0.5);
        for (std::size_t i = 0; i < hot.size(); ++i)
            if (claimed[i]) hot.set(i, false);
        Mask object = connected_component(hot, ax, ay);

        // Inhibition of return. The attended point is always suppressed so an
        // empty mask cannot stall the search.
        Mask inhibit = object;
        inhibit.set(ax, ay, true);
        inhibit = dilate_disk(inhibit, cfg.inhibit_radius);
        for (std::size_t i = 0; i < inhibit.size(); ++i)
            if (inhibit[i]) residual[i] = 0.0;
        for (std::size_t i = 0; i < object.size(); ++i)
            if (object[i]) claimed.set(i, true);

        SearchStep step;
        step.x = ax;
        step.y = ay;
        step.object = std::move(object);
        step.weights = wv;
        step.residual = residual;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

}  // namespace cgvs
