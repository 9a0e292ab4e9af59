#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <string>

namespace ddopt {

// S(x) = argmin_y f_x(y) + r(y). Closed form for the gaussian-quadratic family; otherwise uses the
// problem's registered static solver.
Point repeated_minimization_step(const DecisionProblem& p, const Point& x);

// argmin_y f_x(y) + r(y) + (1/2 eta)||y - x||^2 (gaussian-quadratic family).
Point conceptual_prox_point_step(const DecisionProblem& p, const Point& x, double eta);

// prox_{eta r}(x - eta grad f_x(x)) with the exact expected gradient; requires eta <= 1/L.
Point conceptual_prox_grad_step(const DecisionProblem& p, const Point& x, double eta);

enum class ConceptualMethod { repeated_minimization, prox_point, prox_grad };

// Deterministic iteration of a conceptual method; one deployment per step, no samples.
Trajectory conceptual_run(const DecisionProblem& p, const Point& x0, ConceptualMethod method, double eta,
                          std::int64_t T, const RunOptions& opts = {});

}  // namespace ddopt
