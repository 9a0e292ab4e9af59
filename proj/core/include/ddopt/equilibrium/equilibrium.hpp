#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace ddopt {

struct EquilibriumCertificate {
    enum class Method { closed_form, fixed_point };

    Point x_bar;
    double residual = 0.0;   // ||x_bar - S(x_bar)|| for the repeated-minimization map S
    double tolerance = 0.0;  // bound the residual was certified against
    Method method = Method::closed_form;
    std::int64_t iterations = 0;
};

std::string to_string(EquilibriumCertificate::Method m);

// Gaussian-quadratic family: (I - shift)^{-1} m0 when r = 0, otherwise the fixed point of
// x -> prox_r(m0 + shift x) (in the loss metric) iterated to 1e-12. Throws NoCertificate when
// ||shift||_op >= 1 or the residual exceeds 1e-10.
EquilibriumCertificate closed_form_equilibrium(const DecisionProblem& p);

// Iterates repeated minimization until ||x_{t+1} - x_t|| <= tol (1 - rho). Throws NoCertificate
// (carrying the best residual) when rho >= 1, the iterates diverge, or max_iter is exhausted.
EquilibriumCertificate fixed_point_equilibrium(const DecisionProblem& p, const Point& x0, double tol = 1e-12,
                                               std::int64_t max_iter = 100000);

// phi(x) - phi(x_bar) with phi = f_{x_bar} + r, and its standard error. Exact for the gaussian-quadratic
// family (standard error 0); otherwise Monte Carlo over n draws from D(x_bar) shared by x and x_bar.
std::pair<double, double> gap_estimate(const DecisionProblem& p, const EquilibriumCertificate& cert, const Point& x,
                                       std::int64_t n, std::uint64_t seed);

// Metric oracle for runs; the Monte-Carlo gap (if needed) reuses one seed for every point.
Reference make_reference(const DecisionProblem& p, const EquilibriumCertificate& cert, std::int64_t n = 20000,
                         std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

// Reference built from a point that is not certified, e.g. the algebraic fixed point (I - shift)^{-1} m0
// outside the contraction regime. The gap is exact for the gaussian-quadratic family.
Reference make_reference(const DecisionProblem& p, const Point& x_bar, std::int64_t n = 20000,
                         std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

// (I - shift)^{-1} m0 for the gaussian-quadratic family with r = 0 when I - shift is invertible.
std::optional<Point> algebraic_fixed_point(const DecisionProblem& p);

// Repeated minimization from x0 without a contraction certificate. Returns the last iterate when two
// consecutive iterates are within tol, nullopt when the iteration does not settle in max_iter steps.
std::optional<Point> empirical_fixed_point(const DecisionProblem& p, const Point& x0, double tol = 1e-10,
                                           std::int64_t max_iter = 10000);

// Closed form when available, else fixed-point iteration from zero.
EquilibriumCertificate solve_equilibrium(const DecisionProblem& p);

}  // namespace ddopt
