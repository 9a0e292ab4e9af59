#include "ddopt/algorithms/online.hpp"

#include "ddopt/core/rng.hpp"

#include "common.hpp"

namespace ddopt {

Trajectory online_avg_run(const DecisionProblem& p, const Point& x0, OnlineMethod method,
                          const StepSchedule& schedule, std::int64_t T, std::uint64_t seed,
                          const RunOptions& opts) {
    if (T < 0) throw ParameterError("online_avg_run: budget must be >= 0");
    if (x0.size() != p.dim) throw ParameterError("online_avg_run: x0 dimension mismatch");
    if (opts.batch < 1) throw ParameterError("online_avg_run: batch size must be >= 1");
    if (method == OnlineMethod::dual_averaging && !p.reg.bounded_domain())
        throw ParameterError("dual averaging: requires a bounded domain (box or ball regularizer)");

    Trajectory traj;
    traj.algo = method == OnlineMethod::prox_grad ? "online-pg" : "dual-avg";

    TrajectoryRow row;
    row.x = x0;
    row.x_avg = x0;
    if (detail::record(traj, row, opts, true)) return traj;

    Point x = x0;
    Point avg = x0;
    Point gsum = Point::Zero(p.dim);
    Point g(p.dim);
    Matrix batch;
    for (std::int64_t t = 1; t <= T; ++t) {
        const double eta = schedule.eta(t);
        p.dmap.sample_into(x, opts.batch, derive_seed(seed, static_cast<std::uint64_t>(t)), batch);
        g.setZero();
        for (Eigen::Index i = 0; i < batch.cols(); ++i) p.loss.accumulate(x, batch.col(i), g);
        g /= static_cast<double>(batch.cols());
        traj.max_grad_norm = std::max(traj.max_grad_norm, g.norm());

        // x is the point played in round t.
        avg += (x - avg) / static_cast<double>(t);
        TrajectoryRow next;
        next.query = x;
        if (method == OnlineMethod::prox_grad) {
            x = p.reg.prox(eta, x - eta * g);
        } else {
            gsum += g;
            x = p.reg.prox(eta, x0 - eta * gsum / static_cast<double>(t));
        }
        next.t = t;
        next.x = x;
        next.x_avg = avg;
        next.samples = t * opts.batch;
        next.deployments = t;
        next.eta = eta;
        if (detail::record(traj, std::move(next), opts, t == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

}  // namespace ddopt
