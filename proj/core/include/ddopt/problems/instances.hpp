#pragma once

#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <string>

namespace ddopt {

// 1-D gaussian-quadratic: l = 1/2 (x - z)^2, D(x) = N(m0 + gamma x, sigma^2).
DecisionProblem quad1d(double gamma, double sigma, double m0 = 1.0, Regularizer reg = Regularizer::zero());

// d-dimensional diagonal quadratic with weights log-spaced in [1, kappa], D(x) = N(m0 + gamma x, (sigma^2/d) I),
// m0 = (1, ..., 1).
DecisionProblem quadNd(Eigen::Index d, double gamma, double kappa, double sigma,
                       Regularizer reg = Regularizer::zero());

struct Population {
    Matrix features;         // n x d
    Eigen::VectorXd labels;  // +-1
};

// Synthetic base population: a ~ N(0, I_d), b = sign(<w*, a> + 0.5 noise) with w* = (1, -1, 1, ...).
Population synthetic_population(std::int64_t n_agents, Eigen::Index d, std::uint64_t seed);

// CSV with header a_1..a_d,b.
Population load_population_csv(const std::string& path);

// Strategic classification with logistic-ridge loss. The feature bound covers responses of decisions with
// ||x|| <= x_bound; beta uses the documented heuristic. Registers an exact repeated-minimization solver
// (Newton on the finite population) when r is zero or a scaled squared norm.
DecisionProblem strategic_logistic(Population pop, double gamma_u, double lambda, double x_bound = 5.0,
                                   Regularizer reg = Regularizer::zero());
DecisionProblem strategic_logistic(std::int64_t n_agents, double gamma_u, double lambda, Eigen::Index d = 2,
                                   std::uint64_t seed = 7, Regularizer reg = Regularizer::zero());

}  // namespace ddopt
