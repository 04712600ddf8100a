#include "cgvs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgvs {

namespace {

// count of sorted values >= t
std::size_t count_ge(const std::vector<double>& sorted, double t) {
    return sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t);
}

}  // namespace

CurveReport roc_auc(const Raster& sal, const FixationSet& fix) {
    if (fix.points.empty())
        throw std::invalid_argument("roc_auc: empty fixation set");
    for (const auto& p : fix.points)
        if (!sal.in_bounds(p.x, p.y))
            throw std::invalid_argument("roc_auc: fixation out of bounds");

    Mask is_fix(sal.width(), sal.height());
    std::vector<double> pos;
    pos.reserve(fix.points.size());
    for (const auto& p : fix.points) {
        pos.push_back(sal.at(p.x, p.y));
        is_fix.set(p.x, p.y, true);
    }
    std::vector<double> neg;
    neg.reserve(sal.size());
    for (std::size_t i = 0; i < sal.size(); ++i)
        if (!is_fix[i]) neg.push_back(sal[i]);
    if (neg.empty())
        throw std::invalid_argument("roc_auc: no negative pixels");

    std::vector<double> sorted_neg = neg;
    std::sort(sorted_neg.begin(), sorted_neg.end());

    // Mann-Whitney pair counts.
    std::size_t wins = 0, ties = 0;
    for (double v : pos) {
        const auto lo = std::lower_bound(sorted_neg.begin(), sorted_neg.end(), v);
        const auto hi = std::upper_bound(lo, sorted_neg.end(), v);
        wins += static_cast<std::size_t>(lo - sorted_neg.begin());
        ties += static_cast<std::size_t>(hi - lo);
    }

    CurveReport report;
    report.summary = (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) /
                     (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));

    // TPR/FPR at every distinct saliency value, high threshold first.
    std::vector<double> sorted_pos = pos;
    std::sort(sorted_pos.begin(), sorted_pos.end());
    std::vector<double> thresholds;
    thresholds.reserve(sal.size());
    for (std::size_t i = 0; i < sal.size(); ++i) thresholds.push_back(sal[i]);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    for (double t : thresholds) {
        CurveSample s;
        s.threshold = t;
        s.x = static_cast<double>(count_ge(sorted_neg, t)) / neg.size();
        s.y = static_cast<double>(count_ge(sorted_pos, t)) / pos.size();
        report.samples.push_back(s);
    }
    return report;
}

CurveReport pr_fscore(const Raster& sal, const Mask& gt_mask, double beta2) {
    if (sal.width() != gt_mask.width() || sal.height() != gt_mask.height())
        throw std::invalid_argument("pr_fscore: dimension mismatch");
    if (beta2 < 0.0)
        throw std::invalid_argument("pr_fscore: beta2 must be >= 0");

    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < sal.size(); ++i)
        (gt_mask[i] ? pos : neg).push_back(sal[i]);
    if (pos.empty())
        throw std::invalid_argument("pr_fscore: empty ground truth");
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());

    CurveReport report;
    report.summary = 0.0;
    for (int j = 255; j >= 0; --j) {
        const double t = j / 255.0;
        const double tp = static_cast<double>(count_ge(pos, t));
        const double fp = static_cast<double>(count_ge(neg, t));
        const double precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 1.0;
        const double recall = tp / static_cast<double>(pos.size());
        const double denom = beta2 * precision + recall;
        const double f = denom > 0.0 ? (1.0 + beta2) * precision * recall / denom : 0.0;
        report.summary = std::max(report.summary, f);
        report.samples.push_back({t, recall, precision});
    }
    return report;
}

void distance_transform(const Mask& fg, Raster& dist2, std::vector<int>& nearest_index) {
    const int w = fg.width(), h = fg.height();
    const double inf = std::numeric_limits<double>::infinity();
    dist2 = Raster(w, h, inf);
    nearest_index.assign(static_cast<std::size_t>(w) * h, -1);

    // Per-column nearest foreground row (tie -> smaller row).
    std::vector<int> col_src(static_cast<std::size_t>(w) * h, -1);
    std::vector<int> col_d(static_cast<std::size_t>(w) * h, -1);
#pragma omp parallel for
    for (int x = 0; x < w; ++x) {
        int last = -1;  // nearest fg row above (or at), scanning down
        for (int y = 0; y < h; ++y) {
            if (fg.at(x, y)) last = y;
            if (last >= 0) {
                col_src[static_cast<std::size_t>(y) * w + x] = last;
                col_d[static_cast<std::size_t>(y) * w + x] = y - last;
            }
        }
        last = -1;  // nearest fg row below, scanning up
        for (int y = h - 1; y >= 0; --y) {
            if (fg.at(x, y)) last = y;
            if (last < 0) continue;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const int d = last - y;
            if (col_d[i] < 0 || d < col_d[i]) {
                col_d[i] = d;
                col_src[i] = last;
            }
        }
    }

    // Combine columns; strict < keeps the smallest source column on ties.
#pragma omp parallel for
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            long long best = -1;
            int best_src = -1;
            for (int j = 0; j < w; ++j) {
                const std::size_t cj = static_cast<std::size_t>(y) * w + j;
                if (col_d[cj] < 0) continue;
                const long long dx = x - j;
                const long long dy = col_d[cj];
                const long long d2 = dx * dx + dy * dy;
                if (best < 0 || d2 < best) {
                    best = d2;
                    best_src = col_src[cj] * w + j;
                }
            }
            if (best >= 0) {
                dist2.at(x, y) = static_cast<double>(best);
                nearest_index[static_cast<std::size_t>(y) * w + x] = best_src;
            }
        }
}

double weighted_fscore(const Raster& sal, const Mask& gt_mask, bool apply_weighting) {
    if (sal.width() != gt_mask.width() || sal.height() != gt_mask.height())
        throw std::invalid_argument("weighted_fscore: dimension mismatch");
    std::size_t n_fg = count(gt_mask);
    if (n_fg == 0)
        throw std::invalid_argument("weighted_fscore: empty ground truth");

    const int w = sal.width(), h = sal.height();
    const std::size_t n = sal.size();

    Raster err(w, h);
    for (std::size_t i = 0; i < n; ++i)
        err[i] = std::abs(sal[i] - (gt_mask[i] ? 1.0 : 0.0));

    Raster ew(w, h);
    if (!apply_weighting) {
        ew = err;
    } else {
        Raster dist2;
        std::vector<int> src;
        distance_transform(gt_mask, dist2, src);

        // Background errors replaced by the error at the nearest foreground
        // pixel before smoothing, so dependency spills across the boundary.
        Raster et = err;
        for (std::size_t i = 0; i < n; ++i)
            if (!gt_mask[i]) et[i] = err[static_cast<std::size_t>(src[i])];

        // Normalized 7x7 Gaussian (sigma 5), zero padding.
        constexpr int kR = 3;
        constexpr double kSigma = 5.0;
        double kernel[2 * kR + 1][2 * kR + 1];
        double ksum = 0.0;
        for (int dy = -kR; dy <= kR; ++dy)
            for (int dx = -kR; dx <= kR; ++dx) {
                kernel[dy + kR][dx + kR] =
                    std::exp(-(dx * dx + dy * dy) / (2.0 * kSigma * kSigma));
                ksum += kernel[dy + kR][dx + kR];
            }
        for (auto& row : kernel)
            for (double& v : row) v /= ksum;

        Raster ea(w, h);
#pragma omp parallel for
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int dy = -kR; dy <= kR; ++dy)
                    for (int dx = -kR; dx <= kR; ++dx) {
                        const int qx = x + dx, qy = y + dy;
                        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                        acc += kernel[dy + kR][dx + kR] * et.at(qx, qy);
                    }
                ea.at(x, y) = acc;
            }

        const double decay = std::log(0.5) / 5.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = err[i];
            if (gt_mask[i] && ea[i] < e) e = ea[i];
            const double b = gt_mask[i] ? 1.0 : 2.0 - std::exp(decay * std::sqrt(dist2[i]));
            ew[i] = e * b;
        }
    }

    double sum_fg = 0.0, sum_bg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        (gt_mask[i] ? sum_fg : sum_bg) += ew[i];

    const double eps = std::numeric_limits<double>::epsilon();
    const double tpw = static_cast<double>(n_fg) - sum_fg;
    const double recall = 1.0 - sum_fg / static_cast<double>(n_fg);
    const double precision = tpw / (eps + tpw + sum_bg);
    return 2.0 * precision * recall / (eps + precision + recall);
}

double mae(const Raster& sal, const Mask& gt_mask) {
    if (sal.width() != gt_mask.width() || sal.height() != gt_mask.height())
        throw std::invalid_argument("mae: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < sal.size(); ++i)
        s += std::abs(sal[i] - (gt_mask[i] ? 1.0 : 0.0));
    return s / static_cast<double>(sal.size());
}

}  // namespace cgvs
