#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "cgvs/prior.hpp"
#include "cgvs/reference.hpp"
#include "test_helpers.hpp"

using namespace cgvs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("half_disk_vote with no ridges returns all zeros") {
    EdgeMap edges;
    edges.magnitude = Raster(16, 16, 0.3);
    edges.orientation = Raster(16, 16, 0.0);
    edges.ridges = Mask(16, 16);
    Raster out = half_disk_vote(edges, 4);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("half_disk_vote rejects d_r < 1") {
    EdgeMap edges;
    edges.magnitude = Raster(8, 8, 0.0);
    edges.orientation = Raster(8, 8, 0.0);
    edges.ridges = Mask(8, 8);
    CHECK_THROWS_AS(half_disk_vote(edges, 0), std::invalid_argument);
}

TEST_CASE("vertical ridge with left-heavy magnitude votes only left") {
    // Single vertical ridge at x=16; all other magnitude lives left of it.
    const int n = 32;
    EdgeMap edges;
    edges.magnitude = Raster(n, n, 0.0);
    edges.orientation = Raster(n, n, 0.0);
    edges.ridges = Mask(n, n);
    for (int y = 0; y < n; ++y) {
        edges.magnitude.at(16, y) = 1.0;
        for (int x = 4; x < 12; ++x) edges.magnitude.at(x, y) = 0.8;
    }
    for (int y = 8; y < 24; ++y) {
        edges.ridges.set(16, y, true);
        edges.orientation.at(16, y) = kPi / 2;
    }

    const int d_r = 6;
    Raster counts = half_disk_vote_counts(edges, d_r);
    Raster oracle = ref::half_disk_vote_counts(edges, d_r);
    for (std::size_t i = 0; i < counts.size(); ++i) CHECK(counts[i] == oracle[i]);

    // All votes fall strictly left of the ridge column.
    for (int y = 0; y < n; ++y) {
        for (int x = 17; x < n; ++x) CHECK(counts.at(x, y) == 0.0);
        CHECK(counts.at(16, y) == 0.0);  // on-line pixels take no votes
    }
    double left_total = 0.0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < 16; ++x) left_total += counts.at(x, y);
    CHECK(left_total > 0.0);
}

TEST_CASE("half_disk_vote matches the brute-force oracle on random edge maps") {
    std::mt19937 rng(101);
    for (int rep = 0; rep < 10; ++rep) {
        EdgeMap edges = test::random_edge_map(32, 32, rng);
        for (int d_r : {3, 7}) {
            Raster counts = half_disk_vote_counts(edges, d_r);
            Raster oracle = ref::half_disk_vote_counts(edges, d_r);
            for (std::size_t i = 0; i < counts.size(); ++i)
                CHECK(counts[i] == oracle[i]);
        }
    }
}

TEST_CASE("votes reach only pixels within d_r of their ridge") {
    std::mt19937 rng(103);
    EdgeMap edges = test::random_edge_map(32, 32, rng, 0.03);
    const int d_r = 5;

    // Remove one ridge pixel; nothing farther than d_r may change.
    int rx = -1, ry = -1;
    for (int y = 0; y < 32 && rx < 0; ++y)
        for (int x = 0; x < 32 && rx < 0; ++x)
            if (edges.ridges.at(x, y)) {
                rx = x;
                ry = y;
            }
    REQUIRE(rx >= 0);

    Raster before = half_disk_vote_counts(edges, d_r);
    EdgeMap pruned = edges;
    pruned.ridges.set(rx, ry, false);
    Raster after = half_disk_vote_counts(pruned, d_r);

    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            const int dx = x - rx, dy = y - ry;
            if (dx * dx + dy * dy > d_r * d_r)
                CHECK(before.at(x, y) == after.at(x, y));
        }
}

TEST_CASE("textured square attracts more votes than the plain background") {
    std::mt19937 rng(107);
    const int n = 32;
    Raster lum(n, n, 0.5);
    std::uniform_real_distribution<double> noise(-0.4, 0.4);
    for (int y = 10; y < 22; ++y)
        for (int x = 10; x < 22; ++x) lum.at(x, y) = 0.5 + noise(rng);

    EdgeMap edges = extract_ridges(detect_edges(test::gray_image(lum), 1.0), 0.5);
    Raster votes = half_disk_vote(edges, 5);

    double inside = 0.0, outside = 0.0;
    int n_in = 0, n_out = 0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const bool in = x >= 10 && x < 22 && y >= 10 && y < 22;
            (in ? inside : outside) += votes.at(x, y);
            (in ? n_in : n_out) += 1;
        }
    CHECK(inside / n_in > outside / n_out);
}

TEST_CASE("center_bias peaks at the center pixel of odd dimensions") {
    Raster s = center_bias(33, 33, 11.0);
    CHECK(s.at(16, 16) == 1.0);
    auto [lo, hi] = min_max(s);
    CHECK(hi == 1.0);
    CHECK(lo == 0.0);
}

TEST_CASE("center_bias matches the closed form after normalization") {
    const double sigma = 11.0;
    Raster s = center_bias(33, 33, sigma);
    auto raw = [sigma](int x, int y) {
        const double dx = x - 16.0, dy = y - 16.0;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    };
    const double corner = raw(0, 0);  // global minimum for odd square dims
    CHECK(corner == doctest::Approx(std::exp(-(16.0 * 16 + 16 * 16) / (2 * 121.0))));
    for (auto [x, y] : {std::pair{16, 0}, {5, 9}, {0, 0}, {32, 16}}) {
        const double expect = (raw(x, y) - corner) / (1.0 - corner);
        CHECK(s.at(x, y) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("center_bias flattens out for huge sigma") {
    Raster s = center_bias(33, 33, 1e6);
    auto [lo, hi] = min_max(s);
    CHECK(hi == 1.0);
    CHECK(lo >= 0.0);
    // Pre-normalization the map is nearly constant.
    Raster pre(33, 33);
    for (int y = 0; y < 33; ++y)
        for (int x = 0; x < 33; ++x) {
            const double dx = x - 16.0, dy = y - 16.0;
            pre.at(x, y) = std::exp(-(dx * dx + dy * dy) / (2.0 * 1e12));
        }
    auto [plo, phi] = min_max(pre);
    CHECK(plo >= 0.99 * phi);
}

TEST_CASE("center_bias is symmetric under flips for odd dimensions") {
    Raster s = center_bias(17, 13, 5.0);
    for (int y = 0; y < 13; ++y)
        for (int x = 0; x < 17; ++x) {
            CHECK(s.at(x, y) == s.at(16 - x, y));
            CHECK(s.at(x, y) == s.at(x, 12 - y));
        }
}

TEST_CASE("center_bias rejects non-positive sigma") {
    CHECK_THROWS_AS(center_bias(8, 8, 0.0), std::invalid_argument);
}

TEST_CASE("compose_prior passes s_c through when s_e is zero") {
    Raster s_c = center_bias(15, 15, 5.0);
    Raster zeros(15, 15, 0.0);
    Raster out = compose_prior(zeros, s_c);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == s_c[i]);
}

TEST_CASE("compose_prior is idempotent on equal inputs and commutative") {
    Raster s_c = center_bias(15, 15, 5.0);
    Raster doubled = compose_prior(s_c, s_c);
    for (std::size_t i = 0; i < doubled.size(); ++i)
        CHECK(doubled[i] == doctest::Approx(s_c[i]).epsilon(1e-12));

    std::mt19937 rng(211);
    Raster a = test::random_raster(10, 10, rng);
    Raster b = test::random_raster(10, 10, rng);
    Raster ab = compose_prior(a, b);
    Raster ba = compose_prior(b, a);
    for (std::size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == ba[i]);
    auto [lo, hi] = min_max(ab);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
}

TEST_CASE("compose_prior rejects mismatched dimensions") {
    CHECK_THROWS_AS(compose_prior(Raster(4, 4, 0.0), Raster(5, 4, 0.0)),
                    std::invalid_argument);
}
