#pragma once

#include "ddopt/algorithms/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ddopt {

// Runs an inner method from y0 for T iterations with batch m; stage_seed keys its randomness.
using MinibatchInner =
    std::function<Trajectory(const Point& y0, std::int64_t m, std::int64_t T, std::uint64_t stage_seed)>;
// Runs an inner method from y0 for T iterations with step parameter delta.
using StepInner =
    std::function<Trajectory(const Point& y0, double delta, std::int64_t T, std::uint64_t stage_seed)>;
// Optional h(y) evaluated at the end of each stage for the log.
using HOracle = std::function<double(const Point&)>;

struct MinibatchPlan {
    std::int64_t K = 0;
    std::vector<std::int64_t> batch;  // m_0..m_K
    std::vector<std::int64_t> iters;  // T_0..T_K
};

struct GeometricPlan {
    std::int64_t K = 0;
    std::vector<double> delta;        // delta_0..delta_K
    std::vector<std::int64_t> iters;  // T_0..T_K
};

// K = ceil(1 + log2(B/eps)) clamped at 0 (B = 0 gives K = 0); m_k = 2^k;
// T_0 = ceil(log(2 C Delta/eps)/tau) clamped at 0, T_k = ceil(log(4C)/tau).
MinibatchPlan minibatch_plan(double Delta, double C, double tau, double B, double eps);

// K = ceil(1 + log2(D delta0/eps)) clamped at 0; delta_k = 2^-k delta0;
// T_0 = ceil(log(2 C Delta/eps)/psi(delta0)) clamped at 0, T_k = ceil(log(4C)/psi(delta_k)).
GeometricPlan geometric_plan(double Delta, double C, double D, double delta0, const std::function<double(double)>& psi,
                             double eps);

struct RestartStage {
    std::int64_t k = 0;
    std::int64_t batch = 1;
    double delta = 0.0;
    std::int64_t iters = 0;
    std::int64_t samples = 0;
    double h = 0.0;  // NaN without an oracle
};

struct RestartResult {
    Point x;
    std::vector<RestartStage> stages;
    // Stage trajectories concatenated with cumulative counters.
    Trajectory traj;
    bool budget_capped = false;
};

// budget caps the total number of inner iterations (0 = no cap).
RestartResult minibatch_restart(const MinibatchInner& inner, const Point& y0, const HOracle& h, double Delta, double C,
                                double tau, double B, double eps, std::uint64_t seed, std::int64_t budget = 0);

RestartResult geometric_decay(const StepInner& inner, const Point& y0, const HOracle& h, double Delta, double C,
                              double D, double delta0, const std::function<double(double)>& psi, double eps,
                              std::uint64_t seed, std::int64_t budget = 0);

}  // namespace ddopt
