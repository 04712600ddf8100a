#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "cgvs/edge.hpp"
#include "cgvs/features.hpp"
#include "cgvs/filters.hpp"
#include "test_helpers.hpp"

using namespace cgvs;

namespace {

constexpr double kPi = std::numbers::pi;

ColorImage vertical_step(int w, int h, int col, double lo, double hi) {
    Raster lum(w, h, lo);
    for (int y = 0; y < h; ++y)
        for (int x = col; x < w; ++x) lum.at(x, y) = hi;
    return test::gray_image(lum);
}

}  // namespace

TEST_CASE("detect_edges on a constant image is all zero with empty ridges") {
    ColorImage img = test::gray_image(Raster(24, 24, 0.5));
    EdgeMap edges = detect_edges(img, 2.0);
    for (std::size_t i = 0; i < edges.magnitude.size(); ++i)
        CHECK(edges.magnitude[i] == 0.0);
    edges = extract_ridges(edges, 0.8);
    CHECK(count(edges.ridges) == 0);
}

TEST_CASE("detect_edges rejects non-positive sigma") {
    ColorImage img = test::gray_image(Raster(8, 8, 0.5));
    CHECK_THROWS_AS(detect_edges(img, 0.0), std::invalid_argument);
}

TEST_CASE("vertical luminance step: peak magnitude beside the step, vertical tangent") {
    const int c = 16;
    ColorImage img = vertical_step(32, 32, c, 0.2, 0.8);
    EdgeMap edges = detect_edges(img, 2.0);

    // Normalized maximum sits on the two columns adjacent to the step.
    const int y = 16;
    CHECK(edges.magnitude.at(c - 1, y) == doctest::Approx(1.0));
    CHECK(edges.magnitude.at(c, y) == doctest::Approx(1.0));
    CHECK(edges.magnitude.at(c - 4, y) < 1.0);
    CHECK(edges.magnitude.at(c + 4, y) < 1.0);

    CHECK(edges.orientation.at(c, y) == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(edges.orientation.at(c - 1, y) == doctest::Approx(kPi / 2).epsilon(1e-9));
}

TEST_CASE("equal-luminance red/green boundary still produces edges") {
    const int w = 32, h = 32;
    ColorImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            // Same luminance on both sides, opposite r/g balance.
            const bool left = x < w / 2;
            img.r.at(x, y) = left ? 0.6 : 0.2;
            img.g.at(x, y) = left ? 0.2 : 0.6;
            img.b.at(x, y) = 0.3;
        }
    EdgeMap edges = detect_edges(img, 2.0);
    auto [lo, hi] = min_max(edges.magnitude);
    CHECK(hi == 1.0);
    CHECK(edges.magnitude.at(w / 2, h / 2) > 0.5);
}

TEST_CASE("extract_ridges keeps a synthetic one-pixel ridge line") {
    EdgeMap edges;
    edges.magnitude = Raster(16, 16, 0.0);
    edges.orientation = Raster(16, 16, 0.0);
    edges.ridges = Mask(16, 16);
    for (int y = 2; y < 14; ++y) {
        edges.magnitude.at(8, y) = 1.0;
        edges.orientation.at(8, y) = kPi / 2;  // vertical tangent
    }
    EdgeMap out = extract_ridges(edges, 0.5);
    for (int y = 2; y < 14; ++y) CHECK(out.ridges.at(8, y));
    CHECK(count(out.ridges) == 12);
}

TEST_CASE("extract_ridges of an all-zero magnitude field keeps nothing") {
    EdgeMap edges;
    edges.magnitude = Raster(8, 8, 0.0);
    edges.orientation = Raster(8, 8, 0.0);
    edges.ridges = Mask(8, 8);
    EdgeMap out = extract_ridges(edges, 0.5);
    CHECK(count(out.ridges) == 0);
}

TEST_CASE("extract_ridges validates the quantile") {
    EdgeMap edges;
    edges.magnitude = Raster(8, 8, 0.0);
    edges.orientation = Raster(8, 8, 0.0);
    CHECK_THROWS_AS(extract_ridges(edges, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(extract_ridges(edges, 1.0), std::invalid_argument);
}

TEST_CASE("ridges over a smoothed step form a one-pixel-wide curve") {
    ColorImage img = vertical_step(32, 32, 16, 0.2, 0.8);
    EdgeMap edges = extract_ridges(detect_edges(img, 2.0), 0.5);
    for (int y = 0; y < 32; ++y) {
        int hits = 0;
        for (int x = 0; x < 32; ++x)
            if (edges.ridges.at(x, y)) ++hits;
        CHECK(hits <= 1);
    }
    CHECK(count(edges.ridges) > 0);
}

TEST_CASE("ridge masks are invariant to positive channel scaling") {
    std::mt19937 rng(77);
    Raster lum = gaussian_smooth(test::random_raster(48, 48, rng), 1.0);
    ColorImage a = test::gray_image(lum);
    Raster scaled(48, 48);
    for (std::size_t i = 0; i < lum.size(); ++i) scaled[i] = 0.35 * lum[i];
    ColorImage b = test::gray_image(scaled);

    EdgeMap ea = extract_ridges(detect_edges(a, 2.0), 0.8);
    EdgeMap eb = extract_ridges(detect_edges(b, 2.0), 0.8);
    for (std::size_t i = 0; i < ea.ridges.size(); ++i)
        CHECK(ea.ridges[i] == eb.ridges[i]);
}

TEST_CASE("ridge count is non-increasing in the quantile") {
    std::mt19937 rng(79);
    Raster lum = gaussian_smooth(test::random_raster(48, 48, rng), 1.0);
    EdgeMap edges = detect_edges(test::gray_image(lum), 2.0);
    std::size_t prev = edges.magnitude.size() + 1;
    for (double q : {0.2, 0.4, 0.6, 0.8, 0.95}) {
        const std::size_t n = count(extract_ridges(edges, q).ridges);
        CHECK(n <= prev);
        prev = n;
    }
}

TEST_CASE("rotating the image by 90 degrees rotates the edge field") {
    // Two blobs; enough structure for a meaningful ridge set.
    const int n = 64;
    Raster lum(n, n, 0.1);
    for (int y = 10; y < 30; ++y)
        for (int x = 14; x < 40; ++x) lum.at(x, y) = 0.9;
    for (int y = 40; y < 56; ++y)
        for (int x = 30; x < 52; ++x) lum.at(x, y) = 0.55;

    Raster rot(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            rot.at(n - 1 - y, x) = lum.at(x, y);  // 90 deg counterclockwise

    EdgeMap a = extract_ridges(detect_edges(test::gray_image(lum), 2.0), 0.8);
    EdgeMap b = extract_ridges(detect_edges(test::gray_image(rot), 2.0), 0.8);

    std::size_t matched = 0, total = 0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            if (!a.ridges.at(x, y)) continue;
            ++total;
            // Same pixel in the rotated frame, allowing 1px of discretization.
            bool hit = false;
            for (int dy = -1; dy <= 1 && !hit; ++dy)
                for (int dx = -1; dx <= 1 && !hit; ++dx) {
                    const int rx = n - 1 - y + dx, ry = x + dy;
                    if (rx >= 0 && rx < n && ry >= 0 && ry < n && b.ridges.at(rx, ry))
                        hit = true;
                }
            if (!hit) continue;
            const double ta = a.orientation.at(x, y);
            const double tb = b.orientation.at(n - 1 - y, x);
            double d = std::abs(std::fmod(tb - ta - kPi / 2 + 2 * kPi, kPi));
            d = std::min(d, kPi - d);
            if (d < 0.2) ++matched;
        }
    CHECK(total > 0);
    CHECK(static_cast<double>(matched) / static_cast<double>(total) >= 0.95);
}
