#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>

namespace ddopt {

// Greedy proximal stochastic gradient: sample from D(x_t), then take a prox step.
// Batch size comes from opts.batch; opts.average enables the constant-step running average.
Trajectory sg_run(const DecisionProblem& p, const Point& x0, const StepSchedule& schedule, std::int64_t T,
                  std::uint64_t seed, const RunOptions& opts = {});

// Estimate-sequence parameters of the accelerated method.
struct AsgState {
    double gamma = 0.0;  // gamma_t
    double delta = 0.0;  // delta_t
    double beta = 0.0;   // momentum beta_t
    Point x;
    Point x_prev;
    Point y;
};

// Positive root of delta^2 - eta (alpha_hat - gamma_prev) delta - eta gamma_prev = 0,
// i.e. delta = sqrt(eta gamma_t) with gamma_t = (1 - delta) gamma_prev + delta alpha_hat.
double asg_next_delta(double eta, double gamma_prev, double alpha_hat);

// Upper end of the greedy accelerated regime: (1/2) / (1 + sqrt(32 + 64 sqrt(3 kappa))).
double asg_rho_bound(double kappa);

struct AsgOptions {
    double eta = 0.0;     // 0 selects 1/(4L)
    double gamma0 = 0.0;  // 0 selects alpha_hat
};

// Greedy accelerated stochastic gradient; samples are drawn at the extrapolated point y.
Trajectory asg_run(const DecisionProblem& p, const Point& x0, const AsgOptions& asg, std::int64_t T,
                   std::uint64_t seed, const RunOptions& opts = {});

}  // namespace ddopt
