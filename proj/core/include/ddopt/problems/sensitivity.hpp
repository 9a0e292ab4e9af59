#pragma once

#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ddopt {

struct LipschitzReport {
    double max_ratio = 0.0;                  // max over trials and projections of W1 / ||x - y||
    std::vector<double> projection_ratios;   // max ratio per coordinate projection of the sample space
    double declared_gamma = 0.0;
    double slack = 0.05;
    bool pass = false;
};

// Empirical falsification of the W1 Lipschitz constant on coordinate projections, using common
// random numbers at the two points of each pair.
LipschitzReport certify_lipschitz(const DistributionMap& dmap, std::int64_t trials, std::uint64_t seed,
                                  std::int64_t samples_per_point = 2000);

struct DeviationReport {
    std::vector<double> grid_deviation;  // ||grad f_x(w) - grad f_y(w)|| per grid point
    std::vector<double> grid_se;
    double grad_deviation = 0.0;         // max over the grid
    double grad_se = 0.0;                // standard error at the maximizer
    double grad_bound = 0.0;             // gamma beta ||x - y||
    bool grad_pass = false;

    double gap_deviation = 0.0;          // |(f_x(u)-f_x(v)) - (f_y(u)-f_y(v))|
    double gap_se = 0.0;
    double gap_bound = 0.0;              // gamma beta ||x - y|| ||u - v||
    bool gap_pass = false;

    bool pass = false;
};

// Monte-Carlo check of the gradient and function-gap deviation bounds with common random numbers.
// The grid is w = x + s (y - x) for ten s in [-1, 2]; u and v default to x and y.
DeviationReport deviation_check(const DecisionProblem& p, const Point& x, const Point& y, std::int64_t n,
                                std::uint64_t seed, std::optional<Point> u = std::nullopt,
                                std::optional<Point> v = std::nullopt);

}  // namespace ddopt
