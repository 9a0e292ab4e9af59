#include "ddopt/algorithms/stagewise.hpp"

#include "ddopt/core/averaging.hpp"
#include "ddopt/core/rng.hpp"

#include "common.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ddopt {

namespace {

void check_regime(const ModelConstants& m, double gamma_beta) {
    const double ratio = gamma_beta / (m.alpha1 + m.alpha2);
    if (!(m.alpha1 + m.alpha2 > 0.0) || !(ratio < 1.0)) {
        std::ostringstream os;
        os << "stagewise: regime requires gamma*beta/(alpha1+alpha2) < 1, got " << ratio;
        throw ParameterError(os.str());
    }
}

}  // namespace

std::int64_t stagewise_inner_count(StageVersion version, const ModelConstants& m, double gamma_beta, double eta) {
    check_regime(m, gamma_beta);
    if (!(eta > 0.0)) throw ParameterError("stagewise: eta must be > 0");
    const double s = m.alpha1 + m.alpha2;
    double v = 0.0;
    if (version == StageVersion::I) {
        const double a = 2.0 * s - gamma_beta;
        v = (1.0 + 1.0 / (a * eta)) * std::log(a / (s - gamma_beta));
    } else {
        const double a = s - gamma_beta;
        v = (1.0 + 1.0 / (a * eta)) * std::log(2.0 * s / a);
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v)));
}

double stagewise_eta_cap(StageVersion version, const ModelConstants& m, double gamma_beta, double L) {
    double cap = 0.5 / L;
    if (version == StageVersion::II) {
        if (gamma_beta - m.alpha1 > 0.0) cap = std::min(cap, 1.0 / (gamma_beta - m.alpha1));
        if (m.alpha2 > 0.0) cap = std::min(cap, 1.0 / m.alpha2);
    }
    return cap;
}

Trajectory stagewise_mba_run(const DecisionProblem& p, const Point& u0, const ModelKind& model, StageVersion version,
                             double eta, std::int64_t T, std::uint64_t seed, const RunOptions& opts,
                             std::int64_t inner_J) {
    check_model_support(p, model);
    if (T < 0) throw ParameterError("stagewise_mba_run: budget must be >= 0");
    if (u0.size() != p.dim) throw ParameterError("stagewise_mba_run: u0 dimension mismatch");
    const ProblemConstants& c = p.constants;
    const ModelConstants mc = c.model(model.selector, model.batch);
    const double gb = c.gamma * c.beta;
    const std::int64_t J = inner_J > 0 ? inner_J : stagewise_inner_count(version, mc, gb, eta);
    check_regime(mc, gb);

    Trajectory traj;
    traj.algo = std::string(version == StageVersion::I ? "stage-mba-i" : "stage-mba-ii") + "/" +
                to_string(model.selector);
    {
        std::ostringstream os;
        os << "inner iterations J = " << J;
        detail::add_note(traj, os.str());
    }
    if (eta > stagewise_eta_cap(version, mc, gb, c.L)) detail::add_note(traj, "step size exceeds the version cap");

    TrajectoryRow row;
    row.x = u0;
    if (detail::record(traj, row, opts, true)) return traj;

    Point u = u0;
    Matrix batch;
    std::int64_t samples = 0;
    for (std::int64_t t = 1; t <= T; ++t) {
        const std::uint64_t stage_key = derive_seed(seed, static_cast<std::uint64_t>(t));
        Point x = u;
        ScheduleState avg(u);
        for (std::int64_t j = 1; j <= J; ++j) {
            p.dmap.sample_into(u, model.batch, derive_seed(stage_key, static_cast<std::uint64_t>(j)), batch);
            x = model_step(p, model.selector, x, batch, eta);
            if (version == StageVersion::II) avg = averaging_update(std::move(avg), x, mc.alpha2, mc.alpha1 - gb, eta);
        }
        samples += J * model.batch;
        TrajectoryRow next;
        next.query = u;
        u = version == StageVersion::I ? x : avg.average();
        next.t = t;
        next.x = u;
        next.samples = samples;
        next.deployments = t;
        next.eta = eta;
        if (detail::record(traj, std::move(next), opts, t == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

std::int64_t stagewise_asg_inner_count(const ProblemConstants& c) {
    const double rho = c.rho();
    if (!(rho < 0.5)) {
        std::ostringstream os;
        os << "stagewise accelerated: regime requires rho < 1/2, got " << rho;
        throw ParameterError(os.str());
    }
    const double v = std::sqrt(c.L / c.alpha) * std::log(4.0 / (0.5 - rho));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v)));
}

Trajectory stagewise_asg_run(const DecisionProblem& p, const Point& u0, std::int64_t inner_J, std::int64_t T,
                             std::uint64_t seed, const RunOptions& opts) {
    if (T < 0) throw ParameterError("stagewise_asg_run: budget must be >= 0");
    if (u0.size() != p.dim) throw ParameterError("stagewise_asg_run: u0 dimension mismatch");
    if (opts.batch < 1) throw ParameterError("stagewise_asg_run: batch size must be >= 1");
    const ProblemConstants& c = p.constants;
    const std::int64_t auto_J = stagewise_asg_inner_count(c);
    const std::int64_t J = inner_J > 0 ? inner_J : auto_J;
    const double eta = 1.0 / c.L;
    const double q = std::sqrt(c.alpha / c.L);
    const double momentum = (1.0 - q) / (1.0 + q);

    Trajectory traj;
    traj.algo = "stage-asg";
    {
        std::ostringstream os;
        os << "inner iterations J = " << J;
        detail::add_note(traj, os.str());
    }

    TrajectoryRow row;
    row.x = u0;
    if (detail::record(traj, row, opts, true)) return traj;

    Point u = u0;
    Matrix batch;
    Point g(p.dim);
    for (std::int64_t t = 1; t <= T; ++t) {
        const std::uint64_t stage_key = derive_seed(seed, static_cast<std::uint64_t>(t));
        Point x = u;
        Point x_prev = u;
        Point y = u;
        for (std::int64_t j = 1; j <= J; ++j) {
            p.dmap.sample_into(u, opts.batch, derive_seed(stage_key, static_cast<std::uint64_t>(j)), batch);
            g.setZero();
            for (Eigen::Index i = 0; i < batch.cols(); ++i) p.loss.accumulate(y, batch.col(i), g);
            g /= static_cast<double>(batch.cols());
            x_prev = x;
            x = p.reg.prox(eta, y - eta * g);
            y = x + momentum * (x - x_prev);
        }
        TrajectoryRow next;
        next.query = u;
        u = x;
        next.t = t;
        next.x = u;
        next.samples = t * J * opts.batch;
        next.deployments = t;
        next.eta = eta;
        if (detail::record(traj, std::move(next), opts, t == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

}  // namespace ddopt
