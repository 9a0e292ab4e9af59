#include <benchmark/benchmark.h>

#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/stagewise.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/problems/instances.hpp"

namespace {

// Iterations per second of the greedy loops, no metric oracle attached.
void BM_SgRun(benchmark::State& state) {
    const auto p = ddopt::quadNd(static_cast<Eigen::Index>(state.range(0)), 0.1, 10.0, 1.0);
    ddopt::RunOptions o;
    o.record_every = 1000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto tr = ddopt::sg_run(p, ddopt::Point::Zero(p.dim), ddopt::StepSchedule::constant(0.01), 1000, seed++, o);
        benchmark::DoNotOptimize(tr.last().x.data());
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SgRun)->Arg(1)->Arg(16);

void BM_AsgRun(benchmark::State& state) {
    const auto p = ddopt::quadNd(16, 1e-4, 100.0, 1.0);
    ddopt::RunOptions o;
    o.record_every = 1000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto tr = ddopt::asg_run(p, ddopt::Point::Zero(p.dim), ddopt::AsgOptions{}, 1000, seed++, o);
        benchmark::DoNotOptimize(tr.last().x.data());
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_AsgRun);

void BM_ClippedStepBisection(benchmark::State& state) {
    const auto p = ddopt::quad1d(0.2, 1.0, 1.0, ddopt::Regularizer::l1(0.3));
    ddopt::Matrix z(1, 1);
    z(0, 0) = 2.0;
    const ddopt::Point x = ddopt::Point::Constant(1, 0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddopt::model_step(p, ddopt::Model::clipped, x, z, 0.5));
    }
}
BENCHMARK(BM_ClippedStepBisection);

void BM_StagewiseMba(benchmark::State& state) {
    const auto p = ddopt::quad1d(0.3, 1.0);
    const auto m = p.constants.model(ddopt::Model::linear, 1);
    const double gb = p.constants.gamma * p.constants.beta;
    const double eta = ddopt::stagewise_eta_cap(ddopt::StageVersion::II, m, gb, p.constants.L);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto tr = ddopt::stagewise_mba_run(p, ddopt::Point::Zero(1), ddopt::ModelKind{ddopt::Model::linear, 1},
                                           ddopt::StageVersion::II, eta, 20, seed++);
        benchmark::DoNotOptimize(tr.last().x.data());
    }
}
BENCHMARK(BM_StagewiseMba);

void BM_FixedPointLogistic(benchmark::State& state) {
    const auto p = ddopt::strategic_logistic(state.range(0), 0.05, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddopt::fixed_point_equilibrium(p, ddopt::Point::Zero(p.dim), 1e-10).x_bar.data());
    }
}
BENCHMARK(BM_FixedPointLogistic)->Arg(200)->Arg(2000);

}  // namespace
