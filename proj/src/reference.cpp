#include "cgvs/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cgvs::ref {

Raster box_mean(const Raster& x, int k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("ref::box_mean: k must be odd and >= 1");
    const int r = k / 2;
    Raster out(x.width(), x.height());
    for (int y = 0; y < x.height(); ++y)
        for (int px = 0; px < x.width(); ++px) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    sum += x.at_clamped(px + dx, y + dy);
            out.at(px, y) = sum / (static_cast<double>(k) * k);
        }
    return out;
}

Raster median_filter(const Raster& x, int k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("ref::median_filter: k must be odd and >= 1");
    const int r = k / 2;
    Raster out(x.width(), x.height());
    std::vector<double> window;
    for (int y = 0; y < x.height(); ++y)
        for (int px = 0; px < x.width(); ++px) {
            window.clear();
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    window.push_back(x.at_clamped(px + dx, y + dy));
            std::sort(window.begin(), window.end());
            out.at(px, y) = window[window.size() / 2];
        }
    return out;
}

Raster gaussian_smooth(const Raster& x, double sigma) {
    if (sigma <= 0.0)
        throw std::invalid_argument("ref::gaussian_smooth: sigma must be > 0");
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    const int k = 2 * r + 1;
    std::vector<double> kernel(static_cast<std::size_t>(k) * k);
    double sum = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const double gx = std::exp(-(static_cast<double>(dx) * dx) / (2.0 * sigma * sigma));
            const double gy = std::exp(-(static_cast<double>(dy) * dy) / (2.0 * sigma * sigma));
            kernel[static_cast<std::size_t>(dy + r) * k + (dx + r)] = gx * gy;
            sum += gx * gy;
        }
    for (double& v : kernel) v /= sum;

    Raster out(x.width(), x.height());
    for (int y = 0; y < x.height(); ++y)
        for (int px = 0; px < x.width(); ++px) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    acc += kernel[static_cast<std::size_t>(dy + r) * k + (dx + r)] *
                           x.at_clamped(px + dx, y + dy);
            out.at(px, y) = acc;
        }
    return out;
}

Raster half_disk_vote_counts(const EdgeMap& edges, int d_r) {
    if (d_r < 1)
        throw std::invalid_argument("ref::half_disk_vote_counts: d_r must be >= 1");
    const int w = edges.width(), h = edges.height();
    constexpr double eps = 1e-9;

    std::vector<long> counts(static_cast<std::size_t>(w) * h, 0);
    for (int py = 0; py < h; ++py)
        for (int px = 0; px < w; ++px) {
            if (!edges.ridges.at(px, py)) continue;
            const double theta = edges.orientation.at(px, py);
            const double tx = std::cos(theta), ty = std::sin(theta);

            double sum_pos = 0.0, sum_neg = 0.0;
            long n_pos = 0, n_neg = 0;
            for (int qy = std::max(0, py - d_r); qy <= std::min(h - 1, py + d_r); ++qy)
                for (int qx = std::max(0, px - d_r); qx <= std::min(w - 1, px + d_r); ++qx) {
                    const int dx = qx - px, dy = qy - py;
                    if (dx == 0 && dy == 0) continue;
                    if (dx * dx + dy * dy > d_r * d_r) continue;
                    const double cross = tx * dy - ty * dx;
                    if (cross > eps) {
                        sum_pos += edges.magnitude.at(qx, qy);
                        ++n_pos;
                    } else if (cross < -eps) {
                        sum_neg += edges.magnitude.at(qx, qy);
                        ++n_neg;
                    }
                }
            const double mean_pos = n_pos > 0 ? sum_pos / n_pos : 0.0;
            const double mean_neg = n_neg > 0 ? sum_neg / n_neg : 0.0;
            if (mean_pos == mean_neg) continue;
            const bool pos_wins = mean_pos > mean_neg;

            for (int qy = std::max(0, py - d_r); qy <= std::min(h - 1, py + d_r); ++qy)
                for (int qx = std::max(0, px - d_r); qx <= std::min(w - 1, px + d_r); ++qx) {
                    const int dx = qx - px, dy = qy - py;
                    if (dx == 0 && dy == 0) continue;
                    if (dx * dx + dy * dy > d_r * d_r) continue;
                    const double cross = tx * dy - ty * dx;
                    const bool in_winner = pos_wins ? cross > eps : cross < -eps;
                    if (in_winner) ++counts[static_cast<std::size_t>(qy) * w + qx];
                }
        }

    Raster out(w, h);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(counts[i]);
    return out;
}

Likelihoods likelihoods(const Partition& part, const FeatureStack& feats,
                        const WeightVector& w, int bins) {
    if (part.structure_set.empty() || part.background_set.empty())
        throw std::invalid_argument("ref::likelihoods: empty pixel set");

    const auto bin_of = [bins](double v) {
        return std::clamp(static_cast<int>(v * bins), 0, bins - 1);
    };
    const auto mass = [&](const std::vector<std::uint32_t>& set, int channel, int b) {
        long cnt = 0;
        for (std::uint32_t i : set)
            if (bin_of(feats.channel(channel)[i]) == b) ++cnt;
        return std::max(1e-12, (cnt + 1) / static_cast<double>(set.size() + bins));
    };

    Likelihoods out{Raster(feats.width(), feats.height()),
                    Raster(feats.width(), feats.height())};
    for (std::size_t i = 0; i < feats.lum.size(); ++i) {
        double ls = 0.0, lb = 0.0;
        for (int c = 0; c < kNumChannels; ++c) {
            const int b = bin_of(feats.channel(c)[i]);
            ls += w[c] * std::log(mass(part.structure_set, c, b));
            lb += w[c] * std::log(mass(part.background_set, c, b));
        }
        out.p_x_s[i] = std::exp(ls);
        out.p_x_b[i] = std::exp(lb);
    }
    return out;
}

double roc_auc_pairs(const Raster& sal, const FixationSet& fix) {
    if (fix.points.empty())
        throw std::invalid_argument("ref::roc_auc_pairs: empty fixation set");

    Mask is_fix(sal.width(), sal.height());
    std::vector<double> pos;
    for (const auto& p : fix.points) {
        pos.push_back(sal.at(p.x, p.y));
        is_fix.set(p.x, p.y, true);
    }
    std::vector<double> neg;
    for (std::size_t i = 0; i < sal.size(); ++i)
        if (!is_fix[i]) neg.push_back(sal[i]);

    std::size_t wins = 0, ties = 0;
    for (double p : pos)
        for (double q : neg) {
            if (p > q) ++wins;
            else if (p == q) ++ties;
        }
    return (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) /
           (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double weighted_fscore(const Raster& sal, const Mask& gt) {
    const int w = sal.width(), h = sal.height();
    const std::size_t n = sal.size();
    std::size_t n_fg = count(gt);
    if (n_fg == 0)
        throw std::invalid_argument("ref::weighted_fscore: empty ground truth");

    std::vector<double> err(n), et(n), ea(n, 0.0), ew(n);
    for (std::size_t i = 0; i < n; ++i)
        err[i] = std::abs(sal[i] - (gt[i] ? 1.0 : 0.0));

    // Nearest foreground pixel per pixel, quadratic scan; ties resolve to the
    // lexicographically smallest (distance^2, x, y).
    std::vector<long> d2(n);
    std::vector<std::size_t> src(n);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            long best = std::numeric_limits<long>::max();
            std::size_t best_src = 0;
            for (int sx = 0; sx < w; ++sx)
                for (int sy = 0; sy < h; ++sy) {
                    if (!gt.at(sx, sy)) continue;
                    const long dd = static_cast<long>(x - sx) * (x - sx) +
                                    static_cast<long>(y - sy) * (y - sy);
                    if (dd < best) {
                        best = dd;
                        best_src = static_cast<std::size_t>(sy) * w + sx;
                    }
                }
            d2[static_cast<std::size_t>(y) * w + x] = best;
            src[static_cast<std::size_t>(y) * w + x] = best_src;
        }

    for (std::size_t i = 0; i < n; ++i)
        et[i] = gt[i] ? err[i] : err[src[i]];

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, ksum = 0.0;
            for (int dy = -3; dy <= 3; ++dy)
                for (int dx = -3; dx <= 3; ++dx) {
                    const double kv = std::exp(-(dx * dx + dy * dy) / 50.0);
                    ksum += kv;
                    const int qx = x + dx, qy = y + dy;
                    if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                    acc += kv * et[static_cast<std::size_t>(qy) * w + qx];
                }
            ea[static_cast<std::size_t>(y) * w + x] = acc / ksum;
        }

    const double decay = std::log(0.5) / 5.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = err[i];
        if (gt[i] && ea[i] < e) e = ea[i];
        const double b = gt[i] ? 1.0 : 2.0 - std::exp(decay * std::sqrt(static_cast<double>(d2[i])));
        ew[i] = e * b;
    }

    double sum_fg = 0.0, sum_bg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        (gt[i] ? sum_fg : sum_bg) += ew[i];

    const double eps = std::numeric_limits<double>::epsilon();
    const double tpw = static_cast<double>(n_fg) - sum_fg;
    const double recall = 1.0 - sum_fg / static_cast<double>(n_fg);
    const double precision = tpw / (eps + tpw + sum_bg);
    return 2.0 * precision * recall / (eps + precision + recall);
}

}  // namespace cgvs::ref
