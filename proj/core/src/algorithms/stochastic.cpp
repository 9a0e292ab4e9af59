#include "ddopt/algorithms/stochastic.hpp"

#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/core/rng.hpp"

#include "common.hpp"

#include <cmath>
#include <sstream>

namespace ddopt {

Trajectory sg_run(const DecisionProblem& p, const Point& x0, const StepSchedule& schedule, std::int64_t T,
                  std::uint64_t seed, const RunOptions& opts) {
    Trajectory traj = mba_run(p, x0, ModelKind{Model::linear, opts.batch}, schedule, T, seed, opts);
    traj.algo = "sg";
    return traj;
}

double asg_next_delta(double eta, double gamma_prev, double alpha_hat) {
    const double b = eta * (alpha_hat - gamma_prev);
    const double c = eta * gamma_prev;
    return 0.5 * (b + std::sqrt(b * b + 4.0 * c));
}

double asg_rho_bound(double kappa) { return 0.5 / (1.0 + std::sqrt(32.0 + 64.0 * std::sqrt(3.0 * kappa))); }

Trajectory asg_run(const DecisionProblem& p, const Point& x0, const AsgOptions& asg, std::int64_t T,
                   std::uint64_t seed, const RunOptions& opts) {
    if (T < 0) throw ParameterError("asg_run: budget must be >= 0");
    if (x0.size() != p.dim) throw ParameterError("asg_run: x0 dimension mismatch");
    if (opts.batch < 1) throw ParameterError("asg_run: batch size must be >= 1");
    const ProblemConstants& c = p.constants;
    const double ahat = alpha_hat(c, Target::gap);
    if (!(ahat > 0.0)) throw ParameterError("asg_run: requires alpha_hat = alpha - 2 gamma beta > 0");
    const double eta = asg.eta > 0.0 ? asg.eta : 0.25 / c.L;
    const double gamma0 = asg.gamma0 > 0.0 ? asg.gamma0 : ahat;
    if (gamma0 < ahat) throw ParameterError("asg_run: gamma0 must be >= alpha_hat");

    Trajectory traj;
    traj.algo = "asg";
    {
        std::ostringstream os;
        os << "alpha_hat = alpha - 2 gamma beta = " << ahat;
        detail::add_note(traj, os.str());
    }
    if (c.rho() > asg_rho_bound(c.kappa())) {
        std::ostringstream os;
        os << "regime warning: rho = " << c.rho() << " exceeds the accelerated bound " << asg_rho_bound(c.kappa());
        detail::add_note(traj, os.str());
    }

    TrajectoryRow row;
    row.x = x0;
    if (detail::record(traj, row, opts, true)) return traj;

    AsgState st;
    st.x = x0;
    st.x_prev = x0;
    st.y = x0;
    st.gamma = gamma0;
    double delta = asg_next_delta(eta, st.gamma, ahat);
    Matrix batch;
    Point g(p.dim);
    for (std::int64_t t = 0; t < T; ++t) {
        // Current delta_t, gamma_t, then delta_{t+1} for the momentum.
        st.delta = delta;
        st.gamma = (1.0 - delta) * st.gamma + delta * ahat;
        const double delta_next = asg_next_delta(eta, st.gamma, ahat);
        st.beta = delta * (1.0 - delta) * eta / (eta * delta_next + eta * delta * delta);
        delta = delta_next;

        p.dmap.sample_into(st.y, opts.batch, derive_seed(seed, static_cast<std::uint64_t>(t + 1)), batch);
        g.setZero();
        for (Eigen::Index i = 0; i < batch.cols(); ++i) p.loss.accumulate(st.y, batch.col(i), g);
        g /= static_cast<double>(batch.cols());

        TrajectoryRow next;
        next.query = st.y;
        st.x_prev = st.x;
        st.x = p.reg.prox(eta, st.y - eta * g);
        st.y = st.x + st.beta * (st.x - st.x_prev);

        traj.asg_delta.push_back(st.delta);
        traj.asg_beta.push_back(st.beta);
        traj.asg_gamma.push_back(st.gamma);

        next.t = t + 1;
        next.x = st.x;
        next.samples = (t + 1) * opts.batch;
        next.deployments = t + 1;
        next.eta = eta;
        if (detail::record(traj, std::move(next), opts, t + 1 == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

}  // namespace ddopt
