#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>

namespace ddopt {

struct ModelKind {
    Model selector = Model::linear;
    std::int64_t batch = 1;
};

// Throws UnsupportedOperation when the (loss, model) pair has no solver.
void check_model_support(const DecisionProblem& p, const ModelKind& model);

// Objective of the model subproblem at y:
//   l_x(y; S) + r(y) + (1/2 eta)||y - x||^2
// with l_x the full, linearized or clipped-linearized batch loss around x. Batch samples are columns.
double model_subproblem_value(const DecisionProblem& p, Model model, const Point& x, const Matrix& batch,
                              double eta, const Point& y);

// Minimizer of the model subproblem.
Point model_step(const DecisionProblem& p, Model model, const Point& x, const Matrix& batch, double eta);

// Greedy model-based loop: sample a batch from D(x_t), then minimize the model subproblem.
Trajectory mba_run(const DecisionProblem& p, const Point& x0, const ModelKind& model, const StepSchedule& schedule,
                   std::int64_t T, std::uint64_t seed, const RunOptions& opts = {});

}  // namespace ddopt
