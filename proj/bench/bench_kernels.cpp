// Parallel kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include <random>

#include "cgvs/bayes.hpp"
#include "cgvs/edge.hpp"
#include "cgvs/filters.hpp"
#include "cgvs/prior.hpp"
#include "cgvs/reference.hpp"

using namespace cgvs;

namespace {

Raster make_raster(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Raster x(n, n);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = unif(rng);
    return x;
}

EdgeMap make_edges(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 3.14159265358979);
    EdgeMap edges;
    edges.magnitude = make_raster(n, seed);
    edges.orientation = Raster(n, n);
    edges.ridges = Mask(n, n);
    for (std::size_t i = 0; i < edges.orientation.size(); ++i) {
        edges.orientation[i] = angle(rng);
        if (unif(rng) < 0.02) edges.ridges.set(i, true);
    }
    return edges;
}

void bm_box_mean(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(box_mean(x, 11));
}

void bm_box_mean_ref(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ref::box_mean(x, 11));
}

void bm_median(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(median_filter(x, 21));
}

void bm_median_ref(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(ref::median_filter(x, 21));
}

void bm_gaussian(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_smooth(x, 2.0));
}

void bm_gaussian_ref(benchmark::State& state) {
    Raster x = make_raster(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(ref::gaussian_smooth(x, 2.0));
}

void bm_vote(benchmark::State& state) {
    EdgeMap edges = make_edges(static_cast<int>(state.range(0)), 4);
    const int d_r = static_cast<int>(state.range(0)) / 3;
    for (auto _ : state) benchmark::DoNotOptimize(half_disk_vote_counts(edges, d_r));
}

void bm_vote_ref(benchmark::State& state) {
    EdgeMap edges = make_edges(static_cast<int>(state.range(0)), 4);
    const int d_r = static_cast<int>(state.range(0)) / 3;
    for (auto _ : state) benchmark::DoNotOptimize(ref::half_disk_vote_counts(edges, d_r));
}

void bm_detect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Raster lum(n, n, 0.2);
    for (int y = n / 3; y < 2 * n / 3; ++y)
        for (int x = n / 3; x < 2 * n / 3; ++x) lum.at(x, y) = 0.8;
    ColorImage img;
    img.r = lum;
    img.g = lum;
    img.b = lum;
    RunConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(cgvs_detect(img, 2, cfg));
}

}  // namespace

BENCHMARK(bm_box_mean)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_box_mean_ref)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_median)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_median_ref)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gaussian)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_gaussian_ref)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_vote)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_vote_ref)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_detect)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
