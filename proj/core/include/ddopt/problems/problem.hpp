#pragma once

#include "ddopt/core/prox.hpp"
#include "ddopt/core/types.hpp"
#include "ddopt/problems/distribution.hpp"
#include "ddopt/problems/loss.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace ddopt {

// Stochastic model family used by model-based updates.
enum class Model { full, linear, clipped };

std::string to_string(Model m);

struct ModelConstants {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double sigma0 = 0.0;
};

struct ProblemConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double L = 0.0;
    double sigma_sq = 0.0;
    double mu = 0.0;

    double rho() const { return gamma * beta / alpha; }
    double kappa() const { return L / alpha; }
    // (alpha1, alpha2) per model and sigma0 = sigma / sqrt(batch).
    ModelConstants model(Model m, std::int64_t batch) const;
};

// argmin_y f_x(y) + r(y), supplied by the caller for families without a closed form.
using StaticSolver = std::function<Point(const Point& deployed)>;
// argmin_y (1/m) sum_i l(y, z_i) + r(y) + (1/2 eta)||y - x||^2 for a batch stored column-wise.
using FullModelSolver = std::function<Point(const Matrix& batch, const Point& x, double eta)>;

struct DecisionProblem {
    Loss loss;
    Regularizer reg = Regularizer::zero();
    DistributionMap dmap;
    ProblemConstants constants;
    Eigen::Index dim = 0;
    std::string name;
    StaticSolver static_solver;
    FullModelSolver full_model_solver;
};

// Assembles a problem and derives its constants: gamma from the map, alpha/beta/L from the loss,
// mu from the regularizer; sigma^2 analytic for the gaussian-quadratic family, otherwise a
// Monte-Carlo estimate at x0 with n = 10^4.
DecisionProblem make_problem(Loss loss, Regularizer reg, DistributionMap dmap, const Point& x0,
                             std::uint64_t seed = 0);

// Quadratic loss with a gaussian-location or static map: expectations are available in closed form.
bool is_gaussian_quadratic(const DecisionProblem& p);

// f_x(y) = E_{z ~ D(x)} l(y, z) and its gradient in y (gaussian-quadratic family only).
double expected_loss(const DecisionProblem& p, const Point& deployed, const Point& y);
Point expected_grad(const DecisionProblem& p, const Point& deployed, const Point& y);

// E||grad l(x,z) - grad f_x(x)||^2 by Monte Carlo.
double variance_estimate(const DecisionProblem& p, const Point& x, std::int64_t n, std::uint64_t seed);

}  // namespace ddopt
