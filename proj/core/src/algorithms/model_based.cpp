#include "ddopt/algorithms/model_based.hpp"

#include "ddopt/core/averaging.hpp"
#include "ddopt/core/rng.hpp"

#include "common.hpp"

#include <cmath>
#include <sstream>

namespace ddopt {

namespace {

struct Linearization {
    double value = 0.0;
    Point grad;
};

Linearization linearize(const DecisionProblem& p, const Point& x, const Matrix& batch) {
    Linearization lin;
    lin.grad = Point::Zero(x.size());
    for (Eigen::Index i = 0; i < batch.cols(); ++i) lin.value += p.loss.accumulate(x, batch.col(i), lin.grad);
    const double m = static_cast<double>(batch.cols());
    lin.value /= m;
    lin.grad /= m;
    return lin;
}

Point clipped_step(const DecisionProblem& p, const Point& x, const Linearization& lin, double eta) {
    const Point& g = lin.grad;
    const double gg = g.squaredNorm();
    if (gg == 0.0 || lin.value <= 0.0) return p.reg.prox(eta, x);
    switch (p.reg.kind()) {
    case Regularizer::Kind::zero:
        return x - std::min(eta, lin.value / gg) * g;
    case Regularizer::Kind::scaled_squared_norm: {
        // c(lambda) = A - B lambda for y(lambda) = (x - eta lambda g)/(1 + eta mu).
        const double s = 1.0 / (1.0 + eta * p.reg.mu());
        const double a = lin.value + g.dot(x) * (s - 1.0);
        const double b = eta * gg * s;
        double lambda = 1.0;
        if (a - b < 0.0) lambda = a <= 0.0 ? 0.0 : a / b;
        return s * (x - eta * lambda * g);
    }
    default:
        break;
    }
    auto y_of = [&](double lambda) { return p.reg.prox(eta, x - eta * lambda * g); };
    auto c_of = [&](const Point& y) { return lin.value + g.dot(y - x); };
    Point y1 = y_of(1.0);
    if (c_of(y1) >= 0.0) return y1;
    Point y0 = y_of(0.0);
    if (c_of(y0) <= 0.0) return y0;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (c_of(y_of(mid)) > 0.0) lo = mid;
        else hi = mid;
    }
    return y_of(0.5 * (lo + hi));
}

}  // namespace

void check_model_support(const DecisionProblem& p, const ModelKind& model) {
    if (model.batch < 1) throw ParameterError("model: batch size must be >= 1");
    switch (model.selector) {
    case Model::full:
        if (p.loss.kind() != Loss::Kind::quadratic && !p.full_model_solver)
            throw UnsupportedOperation("full model: needs a quadratic loss or a registered subproblem solver");
        break;
    case Model::clipped:
        if (!p.loss.lower_bound() || *p.loss.lower_bound() != 0.0)
            throw UnsupportedOperation("clipped model: loss must declare lower bound 0");
        break;
    case Model::linear:
        break;
    }
}

double model_subproblem_value(const DecisionProblem& p, Model model, const Point& x, const Matrix& batch,
                              double eta, const Point& y) {
    double model_val = 0.0;
    if (model == Model::full) {
        for (Eigen::Index i = 0; i < batch.cols(); ++i) model_val += p.loss.value(y, batch.col(i));
        model_val /= static_cast<double>(batch.cols());
    } else {
        const Linearization lin = linearize(p, x, batch);
        model_val = lin.value + lin.grad.dot(y - x);
        if (model == Model::clipped) model_val = std::max(model_val, *p.loss.lower_bound());
    }
    return model_val + p.reg.value(y) + 0.5 / eta * (y - x).squaredNorm();
}

Point model_step(const DecisionProblem& p, Model model, const Point& x, const Matrix& batch, double eta) {
    if (!(eta > 0.0)) throw ParameterError("model_step: eta must be > 0");
    switch (model) {
    case Model::linear: {
        const Linearization lin = linearize(p, x, batch);
        return p.reg.prox(eta, x - eta * lin.grad);
    }
    case Model::clipped:
        return clipped_step(p, x, linearize(p, x, batch), eta);
    case Model::full: {
        if (p.loss.kind() == Loss::Kind::quadratic) {
            const Eigen::VectorXd w = p.loss.weights_for(x.size());
            const Point zbar = batch.rowwise().mean();
            const Eigen::VectorXd wt = w.array() + 1.0 / eta;
            const Point v = ((w.array() * zbar.array() + x.array() / eta) / wt.array()).matrix();
            return p.reg.weighted_prox(wt, v);
        }
        if (p.full_model_solver) return p.full_model_solver(batch, x, eta);
        throw UnsupportedOperation("full model: needs a quadratic loss or a registered subproblem solver");
    }
    }
    return x;
}

Trajectory mba_run(const DecisionProblem& p, const Point& x0, const ModelKind& model, const StepSchedule& schedule,
                   std::int64_t T, std::uint64_t seed, const RunOptions& opts) {
    check_model_support(p, model);
    if (T < 0) throw ParameterError("mba_run: budget must be >= 0");
    if (x0.size() != p.dim) throw ParameterError("mba_run: x0 dimension mismatch");
    Trajectory traj;
    traj.algo = "mba-" + to_string(model.selector);

    const double ahat = alpha_hat(p.constants, Target::gap);
    std::optional<ScheduleState> avg;
    if (opts.average) {
        if (!(ahat > 0.0)) throw ParameterError("averaging: requires alpha - 2 gamma beta > 0");
        avg.emplace(x0);
        std::ostringstream os;
        os << "averaging uses alpha_hat = alpha - 2 gamma beta = " << ahat;
        detail::add_note(traj, os.str());
    }
    const double L = p.constants.L;

    TrajectoryRow row;
    row.x = x0;
    if (avg) row.x_avg = x0;
    if (detail::record(traj, row, opts, true)) return traj;

    Point x = x0;
    Matrix batch;
    std::int64_t samples = 0;
    for (std::int64_t t = 1; t <= T; ++t) {
        const double eta = schedule.eta(t);
        if (model.selector == Model::linear && eta >= 0.5 / L) detail::add_note(traj, "step size at or above 1/(2L): rate certificates do not apply");
        p.dmap.sample_into(x, model.batch, derive_seed(seed, static_cast<std::uint64_t>(t)), batch);
        TrajectoryRow next;
        next.query = x;
        x = model_step(p, model.selector, x, batch, eta);
        samples += model.batch;
        next.t = t;
        next.x = x;
        next.samples = samples;
        next.deployments = t;
        next.eta = eta;
        if (avg) {
            if (!detail::diverged(x, opts)) *avg = averaging_update(std::move(*avg), x, 1.0, 0.0, 0.5 * ahat * eta);
            next.x_avg = avg->average();
        }
        if (detail::record(traj, std::move(next), opts, t == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

}  // namespace ddopt
