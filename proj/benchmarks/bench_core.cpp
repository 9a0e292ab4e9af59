#include <benchmark/benchmark.h>

#include "ddopt/core/prox.hpp"
#include "ddopt/core/rng.hpp"
#include "ddopt/core/wasserstein.hpp"
#include "ddopt/problems/instances.hpp"

#include <algorithm>
#include <vector>

namespace {

void BM_Prox(benchmark::State& state, ddopt::Regularizer reg) {
    const auto d = static_cast<Eigen::Index>(state.range(0));
    const ddopt::CounterRng rng(1);
    ddopt::Point x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = rng.normal(static_cast<std::uint64_t>(i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reg.prox(0.3, x));
    }
    state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK_CAPTURE(BM_Prox, l1, ddopt::Regularizer::l1(0.5))->Arg(8)->Arg(512);
BENCHMARK_CAPTURE(BM_Prox, ball, ddopt::Regularizer::ball(1.0))->Arg(8)->Arg(512);

void BM_CounterNormal(benchmark::State& state) {
    const ddopt::CounterRng rng(42);
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.normal(k++));
    }
}
BENCHMARK(BM_CounterNormal);

void BM_W1Sorted(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ddopt::CounterRng rng(3);
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal(2 * i);
        b[i] = rng.normal(2 * i + 1) + 0.5;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddopt::w1_empirical_1d(a, b));
    }
}
BENCHMARK(BM_W1Sorted)->Arg(1 << 10)->Arg(1 << 16);

void BM_SampleGaussian(benchmark::State& state) {
    const auto p = ddopt::quadNd(static_cast<Eigen::Index>(state.range(0)), 0.1, 10.0, 1.0);
    const ddopt::Point x = ddopt::Point::Zero(p.dim);
    ddopt::Matrix out;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        p.dmap.sample_into(x, 64, seed++, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SampleGaussian)->Arg(2)->Arg(32);

}  // namespace
