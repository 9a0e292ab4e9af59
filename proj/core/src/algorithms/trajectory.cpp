#include "ddopt/algorithms/trajectory.hpp"

#include <algorithm>
#include <sstream>

namespace ddopt {

StepSchedule StepSchedule::constant(double eta) {
    if (!(eta > 0.0)) throw ParameterError("constant schedule: eta must be > 0");
    StepSchedule s;
    s.kind_ = Kind::constant;
    s.a_ = eta;
    return s;
}

StepSchedule StepSchedule::inverse_time(double a) {
    if (!(a > 0.0)) throw ParameterError("inverse-time schedule: a must be > 0");
    StepSchedule s;
    s.kind_ = Kind::inverse_time;
    s.a_ = a;
    return s;
}

StepSchedule StepSchedule::staged(std::vector<double> etas) {
    if (etas.empty()) throw ParameterError("staged schedule: needs at least one step size");
    for (double e : etas) {
        if (!(e > 0.0)) throw ParameterError("staged schedule: step sizes must be > 0");
    }
    StepSchedule s;
    s.kind_ = Kind::staged;
    s.etas_ = std::move(etas);
    return s;
}

StepSchedule StepSchedule::linear_growth(double a) {
    if (!(a > 0.0)) throw ParameterError("linear-growth schedule: a must be > 0");
    StepSchedule s;
    s.kind_ = Kind::linear_growth;
    s.a_ = a;
    return s;
}

double StepSchedule::eta(std::int64_t t) const {
    if (t < 1) throw ParameterError("schedule: iterations are counted from 1");
    switch (kind_) {
    case Kind::constant: return a_;
    case Kind::inverse_time: return 1.0 / (a_ * static_cast<double>(t));
    case Kind::staged: return etas_[static_cast<std::size_t>(std::min<std::int64_t>(t, static_cast<std::int64_t>(etas_.size())) - 1)];
    case Kind::linear_growth: return static_cast<double>(t) / a_;
    }
    return a_;
}

std::string StepSchedule::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::constant: os << "constant(" << a_ << ")"; break;
    case Kind::inverse_time: os << "inverse-time(" << a_ << ")"; break;
    case Kind::staged: os << "staged(" << etas_.size() << ")"; break;
    case Kind::linear_growth: os << "linear-growth(" << a_ << ")"; break;
    }
    return os.str();
}

std::string to_string(Target t) { return t == Target::distance ? "distance" : "gap"; }

double alpha_hat(const ProblemConstants& c, Target target) {
    const double gb = c.gamma * c.beta;
    return target == Target::distance ? c.alpha - gb : c.alpha - 2.0 * gb;
}

double alpha_hat(const ModelConstants& m, double gamma_beta, Target target) {
    return target == Target::distance ? m.alpha1 + m.alpha2 - gamma_beta : m.alpha1 + m.alpha2 - 2.0 * gamma_beta;
}

const Point& Trajectory::output() const {
    const auto& r = rows.back();
    return r.x_avg.size() > 0 ? r.x_avg : r.x;
}

void append_trajectory(Trajectory& acc, const Trajectory& next) {
    if (acc.rows.empty()) {
        acc.rows = next.rows;
    } else {
        const auto base = acc.rows.back();
        for (std::size_t i = 1; i < next.rows.size(); ++i) {
            TrajectoryRow r = next.rows[i];
            r.t += base.t;
            r.samples += base.samples;
            r.deployments += base.deployments;
            acc.rows.push_back(std::move(r));
        }
    }
    acc.diverged = acc.diverged || next.diverged;
    acc.max_grad_norm = std::max(acc.max_grad_norm, next.max_grad_norm);
    for (const auto& n : next.notes) {
        if (std::find(acc.notes.begin(), acc.notes.end(), n) == acc.notes.end()) acc.notes.push_back(n);
    }
}

}  // namespace ddopt
