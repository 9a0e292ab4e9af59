#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>

namespace ddopt {

enum class OnlineMethod { prox_grad, dual_averaging };

// Online learner fed with l_t = l(., z_t), z_t ~ D(x_t). Rows carry the uniform average of the
// played points in x_avg; traj.max_grad_norm holds the largest observed gradient norm.
// Dual averaging: x_{t+1} = prox_{eta_t r}(x0 - eta_t * mean(g_1..g_t)); needs a box or ball regularizer.
Trajectory online_avg_run(const DecisionProblem& p, const Point& x0, OnlineMethod method,
                          const StepSchedule& schedule, std::int64_t T, std::uint64_t seed,
                          const RunOptions& opts = {});

}  // namespace ddopt
