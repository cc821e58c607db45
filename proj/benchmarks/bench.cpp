#include <benchmark/benchmark.h>

#include <random>

#include "holdex/counterexample.hpp"
#include "holdex/extend_c.hpp"
#include "holdex/extend_ck.hpp"

using namespace holdex;

namespace {

std::vector<Point> random_points(std::mt19937_64& rng, int dim, int count) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
        Point p(static_cast<std::size_t>(dim));
        double norm = 0.0;
        for (auto& v : p) {
            v = coord(rng);
            norm = std::max(norm, std::abs(v));
        }
        if (norm > 0.0) out.push_back(std::move(p));
    }
    return out;
}

void bm_norm_l1sum(benchmark::State& state) {
    const NormedSpace space =
        NormedSpace::l1_sum({NormedSpace::lp(2.0, 2), NormedSpace::lp(2.0, 2)});
    const Point x{121.0, 11.0, -3.0, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(space.norm(x));
}
BENCHMARK(bm_norm_l1sum);

void bm_counterexample(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const CounterexampleInstance inst = gen_counterexample(11.0, 1, N);
        benchmark::DoNotOptimize(verify_counterexample(inst));
    }
}
BENCHMARK(bm_counterexample)->Arg(1)->Arg(3)->Arg(5);

void bm_linf_partition(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const std::vector<Point> M =
        random_points(rng, static_cast<int>(state.range(0)), 30);
    for (auto _ : state) benchmark::DoNotOptimize(linf_partition(M, 0.1));
}
BENCHMARK(bm_linf_partition)->Arg(1)->Arg(2)->Arg(3);

void bm_ck_extend(benchmark::State& state) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> sample(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < sample.size(); ++i)
        sample[i] = static_cast<double>(i) / static_cast<double>(sample.size());
    const FiniteMetricSpace metric = FiniteMetricSpace::from_points_1d(sample);
    std::vector<Point> points = random_points(rng, 2, 6);
    std::vector<FiniteFunction> fns(points.size(), FiniteFunction(metric.size()));
    for (auto& fn : fns)
        for (auto& v : fn) v = val(rng);
    PartialMap pm = make_fn_map(NormedSpace::lp(2.0, 2), HolderParams{1.0, 1.0},
                                std::move(points), metric, std::move(fns));
    pm.params.K = holder_constant(pm, 1.0) * (1.0 + 1e-12);
    const Point x{0.1, 0.2};
    for (auto _ : state) {
        const ModulusTable table = xi_modulus(pm, x);
        benchmark::DoNotOptimize(ck_extend(pm, x, table));
    }
}
BENCHMARK(bm_ck_extend)->Arg(5)->Arg(10)->Arg(20);

void bm_cone_cover(benchmark::State& state) {
    const NormedSpace space = NormedSpace::lp(2.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cone_cover(space, 0.5));
}
BENCHMARK(bm_cone_cover)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
