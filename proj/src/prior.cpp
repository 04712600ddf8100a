#include "cgvs/prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgvs {

namespace {

// Tolerance for "exactly on the splitting line": tangents computed from
// atan2 rarely produce an exact zero cross product (cos(pi/2) ~ 6e-17).
constexpr double kOnLineEps = 1e-9;

struct VoteContext {
    std::vector<std::pair<int, int>> disk;  // row-major offsets, (0,0) excluded
};

VoteContext make_context(int d_r) {
    VoteContext ctx;
    for (int dy = -d_r; dy <= d_r; ++dy)
        for (int dx = -d_r; dx <= d_r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (dx * dx + dy * dy <= d_r * d_r) ctx.disk.emplace_back(dx, dy);
        }
    return ctx;
}

// Votes cast by one ridge pixel, accumulated into counts.
void vote_one(const EdgeMap& edges, const VoteContext& ctx, int px, int py,
              std::vector<int>& counts) {
    const int w = edges.width(), h = edges.height();
    const double theta = edges.orientation.at(px, py);
    const double tx = std::cos(theta), ty = std::sin(theta);

    double sum_pos = 0.0, sum_neg = 0.0;
    int n_pos = 0, n_neg = 0;
    for (auto [dx, dy] : ctx.disk) {
        const int qx = px + dx, qy = py + dy;
        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
        const double cross = tx * dy - ty * dx;
        if (cross > kOnLineEps) {
            sum_pos += edges.magnitude.at(qx, qy);
            ++n_pos;
        } else if (cross < -kOnLineEps) {
            sum_neg += edges.magnitude.at(qx, qy);
            ++n_neg;
        }
    }
    const double mean_pos = n_pos > 0 ? sum_pos / n_pos : 0.0;
    const double mean_neg = n_neg > 0 ? sum_neg / n_neg : 0.0;
    if (mean_pos == mean_neg) return;

    const bool pos_wins = mean_pos > mean_neg;
    for (auto [dx, dy] : ctx.disk) {
        const int qx = px + dx, qy = py + dy;
        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
        const double cross = tx * dy - ty * dx;
        const bool in_winner = pos_wins ? cross > kOnLineEps : cross < -kOnLineEps;
        if (in_winner) ++counts[static_cast<std::size_t>(qy) * w + qx];
    }
}

}  // namespace

Raster half_disk_vote_counts(const EdgeMap& edges, int d_r) {
    if (d_r < 1)
        throw std::invalid_argument("half_disk_vote: d_r must be >= 1");

    const int w = edges.width(), h = edges.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const VoteContext ctx = make_context(d_r);

    std::vector<std::pair<int, int>> ridge_pixels;
    for (int y = 0; y < h; ++y)
        for (int px = 0; px < w; ++px)
            if (edges.ridges.at(px, y)) ridge_pixels.emplace_back(px, y);

    // Integer votes into per-thread buffers; the merged result equals the
    // sequential accumulation exactly.
    std::vector<int> counts(n, 0);
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<int> local(n, 0);
#pragma omp for nowait
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ridge_pixels.size()); ++i)
            vote_one(edges, ctx, ridge_pixels[i].first, ridge_pixels[i].second, local);
#pragma omp critical
        for (std::size_t j = 0; j < n; ++j) counts[j] += local[j];
    }
#else
    for (auto [px, py] : ridge_pixels) vote_one(edges, ctx, px, py, counts);
#endif

    Raster out(w, h);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(counts[i]);
    return out;
}

Raster half_disk_vote(const EdgeMap& edges, int d_r) {
    return normalize01(half_disk_vote_counts(edges, d_r));
}

Raster center_bias(int width, int height, double sigma_c) {
    if (sigma_c <= 0.0)
        throw std::invalid_argument("center_bias: sigma_c must be > 0");
    Raster out(width, height);
    const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
    const double inv = 1.0 / (2.0 * sigma_c * sigma_c);
#pragma omp parallel for
    for (int y = 0; y < height; ++y)
        for (int px = 0; px < width; ++px) {
            const double dx = px - cx, dy = y - cy;
            out.at(px, y) = std::exp(-(dx * dx + dy * dy) * inv);
        }
    return normalize01(out);
}

Raster compose_prior(const Raster& s_e, const Raster& s_c) {
    if (!s_e.same_size(s_c))
        throw std::invalid_argument("compose_prior: dimension mismatch");
    Raster sum(s_e.width(), s_e.height());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = s_e[i] + s_c[i];
    return normalize01(sum);
}

PriorMap build_prior(const EdgeMap& edges, double d_r_factor, double sigma_c_factor) {
    const int w = edges.width(), h = edges.height();
    const int m = std::min(w, h);
    PriorMap prior;
    prior.d_r = std::max(1, static_cast<int>(std::lround(d_r_factor * m)));
    prior.sigma_c = std::max(1e-6, sigma_c_factor * m);
    prior.s_e = half_disk_vote(edges, prior.d_r);
    prior.s_c = center_bias(w, h, prior.sigma_c);
    prior.s_w = compose_prior(prior.s_e, prior.s_c);
    return prior;
}

}  // namespace cgvs
