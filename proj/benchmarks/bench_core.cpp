#include <benchmark/benchmark.h>

#include "qlab/bounds.hpp"
#include "qlab/project.hpp"

using namespace qlab;

static void BM_weyl_count_t3(benchmark::State& state) {
    const auto t3 = SpectralModel::torus(3);
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(weyl_count(t3, lambda));
}
BENCHMARK(BM_weyl_count_t3)->Arg(16)->Arg(64)->Arg(256);

static void BM_enumerate_cap_t4(benchmark::State& state) {
    const auto t4 = SpectralModel::torus(4);
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            enumerate_window(t4, lambda, lambda + 1.0, 1.0 / std::sqrt(lambda)));
}
BENCHMARK(BM_enumerate_cap_t4)->Arg(32)->Arg(64)->Arg(128);

static void BM_multiply_t2_clusters(benchmark::State& state) {
    const auto t2 = SpectralModel::torus(2);
    const double mu = static_cast<double>(state.range(0));
    const Quasimode u = cluster_quasimode(t2, 4.0 * mu, 1.0);
    const Quasimode v = cluster_quasimode(t2, mu, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(u.field, v.field));
}
BENCHMARK(BM_multiply_t2_clusters)->Arg(8)->Arg(16)->Arg(32);

static void BM_sphere_quartic_norm(benchmark::State& state) {
    const Quasimode u = sphere_extremal(SphereExtremal::Sectoral,
                                        static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lp_norm(u.field, 4.0));
}
BENCHMARK(BM_sphere_quartic_norm)->Arg(16)->Arg(32)->Arg(64);

static void BM_rank_projection(benchmark::State& state) {
    const auto t2 = SpectralModel::torus(2);
    const Quasimode u = cluster_quasimode(t2, 32.0, 1.0);
    const Quasimode v = cluster_quasimode(t2, 8.0, 1.0);
    const SpectralField h = multiply(u.field, v.field);
    const int64_t nu = weyl_count(t2, 20.0);
    for (auto _ : state) benchmark::DoNotOptimize(project_rank(h, nu));
}
BENCHMARK(BM_rank_projection);

BENCHMARK_MAIN();
