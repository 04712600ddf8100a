#include "cgvs/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cgvs/edge.hpp"
#include "cgvs/filters.hpp"
#include "cgvs/prior.hpp"

namespace cgvs {

namespace {

constexpr int kGridStartPct = 10;
constexpr int kGridEndPct = 50;
constexpr int kGridStepPct = 2;
constexpr int kMedianSize = 21;
constexpr double kPriorClamp = 1e-6;
constexpr double kPmfFloor = 1e-12;

int bin_of(double v, int bins) {
    int b = static_cast<int>(v * bins);
    return std::clamp(b, 0, bins - 1);
}

void check_sets(const Partition& part) {
    if (part.structure_set.empty() || part.background_set.empty())
        throw std::invalid_argument("partition: structure and background must be non-empty");
}

}  // namespace

Partition search_threshold(const Raster& prior, const FeatureStack& feats,
                           const WeightVector& w0) {
    if (prior.width() != feats.width() || prior.height() != feats.height())
        throw std::invalid_argument("search_threshold: prior/feature dimension mismatch");

    const std::size_t n = prior.size();

    // Pixels by descending prior, row-major index breaking ties.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&prior](std::uint32_t a, std::uint32_t b) {
                         return prior[a] > prior[b];
                     });

    // Channel prefix sums over the sorted order give every candidate's means
    // in O(1).
    std::array<std::vector<double>, kNumChannels> prefix;
    std::array<double, kNumChannels> total{};
    for (int c = 0; c < kNumChannels; ++c) {
        const Raster& f = feats.channel(c);
        prefix[c].resize(n + 1, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            prefix[c][k + 1] = prefix[c][k] + f[order[k]];
        total[c] = prefix[c][n];
    }

    const std::size_t half = std::max<std::size_t>(1, n / 2);
    double best_score = -1.0;
    int best_pct = kGridStartPct;
    std::size_t best_m = 1;
    std::array<double, kNumChannels> best_ms{}, best_mb{};

    for (int pct = kGridStartPct; pct <= kGridEndPct; pct += kGridStepPct) {
        // ceil(pct*n/100) in integers; capped so the fraction stays <= 1/2.
        std::size_t m = (static_cast<std::size_t>(pct) * n + 99) / 100;
        m = std::clamp<std::size_t>(m, 1, half);
        if (m >= n) continue;  // needs a non-empty background

        double score2 = 0.0;
        std::array<double, kNumChannels> ms{}, mb{};
        for (int c = 0; c < kNumChannels; ++c) {
            ms[c] = prefix[c][m] / static_cast<double>(m);
            mb[c] = (total[c] - prefix[c][m]) / static_cast<double>(n - m);
            const double d = w0[c] * (ms[c] - mb[c]);
            score2 += d * d;
        }
        const double score = std::sqrt(score2);
        if (score > best_score) {
            best_score = score;
            best_pct = pct;
            best_m = m;
            best_ms = ms;
            best_mb = mb;
        }
    }
    if (best_score < 0.0)
        throw std::invalid_argument("search_threshold: raster too small to split");

    Partition part;
    part.t_max = best_pct / 100.0;
    part.mean_s = best_ms;
    part.mean_b = best_mb;
    part.structure_set.assign(order.begin(), order.begin() + best_m);
    part.background_set.assign(order.begin() + best_m, order.end());
    std::sort(part.structure_set.begin(), part.structure_set.end());
    std::sort(part.background_set.begin(), part.background_set.end());
    return part;
}

WeightVector compute_weights(const Partition& part, const FeatureStack& feats) {
    check_sets(part);

    std::array<double, kNumChannels> diff{};
    double mu = 0.0;
    for (int c = 0; c < kNumChannels; ++c) {
        const Raster& f = feats.channel(c);
        double ss = 0.0, sb = 0.0;
        for (std::uint32_t i : part.structure_set) ss += f[i];
        for (std::uint32_t i : part.background_set) sb += f[i];
        diff[c] = std::abs(ss / part.structure_set.size() - sb / part.background_set.size());
        mu += diff[c];
    }

    WeightVector wv;
    if (mu == 0.0) return wv;  // no separation in any channel -> uniform
    for (int c = 0; c < kNumChannels; ++c) wv.w[c] = diff[c] / mu;
    return wv;
}

Likelihoods likelihoods(const Partition& part, const FeatureStack& feats,
                        const WeightVector& w, int bins) {
    check_sets(part);
    if (bins < 2)
        throw std::invalid_argument("likelihoods: bins must be >= 2");
    if (std::abs(w.sum() - 1.0) > 1e-6)
        throw std::invalid_argument("likelihoods: weights must sum to 1");

    // Laplace-smoothed log bin masses per channel and set.
    std::array<std::vector<double>, kNumChannels> log_pmf_s, log_pmf_b;
    for (int c = 0; c < kNumChannels; ++c) {
        const Raster& f = feats.channel(c);
        std::vector<int> hs(bins, 0), hb(bins, 0);
        for (std::uint32_t i : part.structure_set) ++hs[bin_of(f[i], bins)];
        for (std::uint32_t i : part.background_set) ++hb[bin_of(f[i], bins)];
        const double ds = static_cast<double>(part.structure_set.size() + bins);
        const double db = static_cast<double>(part.background_set.size() + bins);
        log_pmf_s[c].resize(bins);
        log_pmf_b[c].resize(bins);
        for (int b = 0; b < bins; ++b) {
            log_pmf_s[c][b] = std::log(std::max(kPmfFloor, (hs[b] + 1) / ds));
            log_pmf_b[c][b] = std::log(std::max(kPmfFloor, (hb[b] + 1) / db));
        }
    }

    const std::size_t n = feats.lum.size();
    Likelihoods out{Raster(feats.width(), feats.height()),
                    Raster(feats.width(), feats.height())};
#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double ls = 0.0, lb = 0.0;
        for (int c = 0; c < kNumChannels; ++c) {
            const int b = bin_of(feats.channel(c)[i], bins);
            ls += w[c] * log_pmf_s[c][b];
            lb += w[c] * log_pmf_b[c][b];
        }
        out.p_x_s[i] = std::exp(ls);
        out.p_x_b[i] = std::exp(lb);
    }
    return out;
}

Raster posterior(const Raster& prior, const Raster& p_x_s, const Raster& p_x_b) {
    if (!prior.same_size(p_x_s) || !prior.same_size(p_x_b))
        throw std::invalid_argument("posterior: dimension mismatch");

    Raster out(prior.width(), prior.height());
    const std::size_t n = prior.size();
#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double ps = std::clamp(prior[i], kPriorClamp, 1.0 - kPriorClamp);
        const double num = ps * p_x_s[i];
        out[i] = num / (num + (1.0 - ps) * p_x_b[i]);
    }
    return out;
}

PosteriorMap cgvs_iterate(const Raster& prior0, const FeatureStack& feats,
                          int iterations, int bins) {
    if (iterations < 0)
        throw std::invalid_argument("cgvs_iterate: iterations must be >= 0");

    Raster prior = prior0;
    WeightVector w0 = uniform_weights();
    PosteriorMap result;
    for (int round = 0; round <= iterations; ++round) {
        if (round > 0)
            prior = normalize01(median_filter(result.p_sx, kMedianSize));
        Partition part = search_threshold(prior, feats, w0);
        WeightVector w = compute_weights(part, feats);
        Likelihoods lik = likelihoods(part, feats, w, bins);
        result.p_sx = posterior(prior, lik.p_x_s, lik.p_x_b);
        result.weights = w;
        result.partition = std::move(part);
        result.round_weights.push_back(w);
        w0 = w;
    }
    result.iteration = iterations;
    return result;
}

PosteriorMap cgvs_detect(const ColorImage& img, int iterations, const RunConfig& cfg) {
    cfg.validate();
    const int ow = img.width(), oh = img.height();

    ColorImage work = img;
    const int longest = std::max(ow, oh);
    if (longest > cfg.working_resolution_cap) {
        const double s = static_cast<double>(cfg.working_resolution_cap) / longest;
        work = resize_bilinear(img, std::max(1, static_cast<int>(std::lround(ow * s))),
                               std::max(1, static_cast<int>(std::lround(oh * s))));
    }

    EdgeMap edges = detect_edges(work, cfg.sigma_edge);
    edges = extract_ridges(edges, cfg.ridge_quantile);
    const PriorMap prior = build_prior(edges, cfg.d_r_factor, cfg.sigma_c_factor);
    const FeatureStack feats = build_feature_stack(work, edges, cfg.sigma_edge);

    PosteriorMap out = cgvs_iterate(prior.s_w, feats, iterations, cfg.histogram_bins);
    if (work.width() != ow || work.height() != oh)
        out.p_sx = resize_bilinear(out.p_sx, ow, oh);
    return out;
}

}  // namespace cgvs
