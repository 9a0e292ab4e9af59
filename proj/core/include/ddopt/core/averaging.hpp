#pragma once

#include "ddopt/core/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ddopt {

struct GammaProducts {
    std::vector<double> gamma;  // Gamma_1..Gamma_t
    double residual = 0.0;      // |sum_i delta_i/Gamma_i + 1 - 1/Gamma_t|
};

// Partial products Gamma_t = prod_{i<=t} (1 - delta_i) and the telescoping residual.
GammaProducts gamma_products(std::span<const double> deltas);

// Running weights and average for the averaging recursion
//   xhat_t = (1 - dhat_t) xhat_{t-1} + dhat_t x_t,  dhat_t = delta_t (c1+c2) / (1 + c2 delta_t).
// Products are kept in log space.
class ScheduleState {
public:
    explicit ScheduleState(Point initial_average);

    std::int64_t t() const { return t_; }
    double delta() const { return delta_; }
    double delta_hat() const { return delta_hat_; }
    double log_gamma() const { return log_gamma_ + log_gamma_comp_; }
    double log_gamma_hat() const { return log_gamma_hat_ + log_gamma_hat_comp_; }
    double gamma() const;
    double gamma_hat() const;
    const Point& average() const { return avg_; }

private:
    friend ScheduleState averaging_update(ScheduleState state, const Point& x, double c1, double c2,
                                          double delta);

    std::int64_t t_ = 0;
    double delta_ = 0.0;
    double delta_hat_ = 0.0;
    double log_gamma_ = 0.0;
    double log_gamma_comp_ = 0.0;
    double log_gamma_hat_ = 0.0;
    double log_gamma_hat_comp_ = 0.0;
    Point avg_;
};

ScheduleState averaging_update(ScheduleState state, const Point& x, double c1, double c2, double delta);

// delta_hat for given (delta, c1, c2), validating the weight constraints.
double augmented_weight(double delta, double c1, double c2);

// Right side of the constant-parameter bound:
//   ((1 - c1 delta)/(1 + c2 delta))^t (h0 + (c1+c2) D0) + omega/delta
double constant_parameter_bound(double h0, double d0, double c1, double c2, double delta, double omega,
                                std::int64_t t);

}  // namespace ddopt
