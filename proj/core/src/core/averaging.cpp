#include "ddopt/core/averaging.hpp"

#include <cmath>
#include <sstream>

namespace ddopt {

namespace {

// Neumaier compensated accumulation.
void compensated_add(double& sum, double& comp, double value) {
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value)) comp += (sum - t) + value;
    else comp += (value - t) + sum;
    sum = t;
}

}  // namespace

GammaProducts gamma_products(std::span<const double> deltas) {
    GammaProducts out;
    out.gamma.reserve(deltas.size());
    double log_gamma = 0.0;
    double comp = 0.0;
    double sum = 0.0;
    double sum_comp = 0.0;
    for (double d : deltas) {
        if (!(d > 0.0 && d < 1.0)) {
            std::ostringstream os;
            os << "gamma_products: delta must lie in (0,1), got " << d;
            throw ParameterError(os.str());
        }
        compensated_add(log_gamma, comp, std::log1p(-d));
        const double g = std::exp(log_gamma + comp);
        out.gamma.push_back(g);
        compensated_add(sum, sum_comp, d / g);
    }
    if (!out.gamma.empty()) out.residual = std::abs((sum + sum_comp) + 1.0 - 1.0 / out.gamma.back());
    return out;
}

ScheduleState::ScheduleState(Point initial_average) : avg_(std::move(initial_average)) {}

double ScheduleState::gamma() const { return std::exp(log_gamma()); }

double ScheduleState::gamma_hat() const { return std::exp(log_gamma_hat()); }

double augmented_weight(double delta, double c1, double c2) {
    if (!(delta > 0.0 && delta < 1.0)) {
        std::ostringstream os;
        os << "averaging_update: delta must lie in (0,1), got " << delta;
        throw ParameterError(os.str());
    }
    if (!(c1 + c2 > 0.0)) throw ParameterError("averaging_update: requires c1 + c2 > 0");
    if (!(1.0 - c1 * delta > 0.0)) throw ParameterError("averaging_update: requires 1 - c1*delta > 0");
    if (!(1.0 + c2 * delta > 0.0)) throw ParameterError("averaging_update: requires 1 + c2*delta > 0");
    return delta * (c1 + c2) / (1.0 + c2 * delta);
}

ScheduleState averaging_update(ScheduleState state, const Point& x, double c1, double c2, double delta) {
    const double dhat = augmented_weight(delta, c1, c2);
    if (x.size() != state.avg_.size()) throw ParameterError("averaging_update: dimension mismatch");
    state.t_ += 1;
    state.delta_ = delta;
    state.delta_hat_ = dhat;
    compensated_add(state.log_gamma_, state.log_gamma_comp_, std::log1p(-delta));
    compensated_add(state.log_gamma_hat_, state.log_gamma_hat_comp_, std::log1p(-dhat));
    state.avg_ = (1.0 - dhat) * state.avg_ + dhat * x;
    return state;
}

double constant_parameter_bound(double h0, double d0, double c1, double c2, double delta, double omega,
                                std::int64_t t) {
    augmented_weight(delta, c1, c2);
    const double q = (1.0 - c1 * delta) / (1.0 + c2 * delta);
    return std::pow(q, static_cast<double>(t)) * (h0 + (c1 + c2) * d0) + omega / delta;
}

}  // namespace ddopt
