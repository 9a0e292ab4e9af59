#pragma once

#include "ddopt/algorithms/restart.hpp"
#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/harness/config.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ddopt {

std::vector<std::string> problem_names();
std::vector<std::string> algorithm_names();

Regularizer build_regularizer(const RegularizerSpec& spec);
DecisionProblem build_problem(const ProblemSpec& spec);
Point initial_point(const ProblemSpec& spec, Eigen::Index dim);

struct RunContext {
    const Reference* reference = nullptr;
    Target target = Target::distance;
    std::int64_t record_every = 1;
    double stop_tolerance = 0.0;
};

// Default step of a named algorithm on p (the value used when AlgorithmSpec::eta is 0).
double default_eta(const DecisionProblem& p, const std::string& algo);

// Runs a named algorithm. Wrapped runs (restart-geo / restart-minibatch) treat budget as a cap on the
// total number of inner iterations (0 = uncapped) and need a reference unless Delta is given.
Trajectory run_algorithm(const DecisionProblem& p, const AlgorithmSpec& spec, const Point& x0, std::int64_t budget,
                         std::uint64_t seed, const RunContext& ctx);

// Restart constants for a wrapped algorithm and target.
struct GeometricParams {
    double c_psi = 0.0;     // psi(delta) = c_psi * delta, or psi == c_psi when constant_psi
    bool constant_psi = false;
    double C = 1.0;
    double D = 0.0;
    double delta0 = 0.0;
};
GeometricParams geometric_params(const DecisionProblem& p, const AlgorithmSpec& spec, Target target);

struct MinibatchParams {
    double tau = 0.0;
    double C = 1.0;
    double B = 0.0;
};
MinibatchParams minibatch_params(const DecisionProblem& p, const AlgorithmSpec& spec, Target target);

// Runs a wrapped algorithm and also returns the restart stage log.
RestartResult run_restart(const DecisionProblem& p, const AlgorithmSpec& spec, const Point& x0, std::int64_t budget,
                          std::uint64_t seed, const RunContext& ctx);

}  // namespace ddopt
