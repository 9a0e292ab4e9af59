#pragma once

#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>

namespace ddopt {

enum class StageVersion { I, II };

// Inner iteration count per stage for constant step eta:
//   I:  ceil((1 + 1/((2a1 + 2a2 - gb) eta)) log((2a1 + 2a2 - gb)/(a1 + a2 - gb)))
//   II: ceil((1 + 1/((a1 + a2 - gb) eta)) log(2(a1 + a2)/(a1 + a2 - gb)))
// Throws ParameterError unless gb/(a1 + a2) < 1.
std::int64_t stagewise_inner_count(StageVersion version, const ModelConstants& m, double gamma_beta, double eta);

// Largest admissible step: I: 1/(2L); II: min{1/(2L), 1/(gb - a1)^+, 1/a2}.
double stagewise_eta_cap(StageVersion version, const ModelConstants& m, double gamma_beta, double L);

// Lazy deployment: each of the T outer stages deploys D(u_t) once and runs J model-based steps on it.
// inner_J = 0 selects stagewise_inner_count.
Trajectory stagewise_mba_run(const DecisionProblem& p, const Point& u0, const ModelKind& model, StageVersion version,
                             double eta, std::int64_t T, std::uint64_t seed, const RunOptions& opts = {},
                             std::int64_t inner_J = 0);

// ceil(sqrt(L/alpha) log(4/(1/2 - rho))); throws ParameterError unless rho < 1/2.
std::int64_t stagewise_asg_inner_count(const ProblemConstants& c);

// Lazy accelerated method: J accelerated steps with eta = 1/L and constant momentum per deployment.
// inner_J = 0 selects stagewise_asg_inner_count; the inner batch size is opts.batch.
Trajectory stagewise_asg_run(const DecisionProblem& p, const Point& u0, std::int64_t inner_J, std::int64_t T,
                             std::uint64_t seed, const RunOptions& opts = {});

}  // namespace ddopt
