#include "ddopt/algorithms/restart.hpp"

#include "ddopt/core/rng.hpp"

#include <cmath>
#include <limits>

namespace ddopt {

namespace {

std::int64_t ceil_nonneg(double v) {
    if (!(v > 0.0)) return 0;
    return static_cast<std::int64_t>(std::ceil(v));
}

void check_common(double Delta, double C, double eps) {
    if (!(Delta >= 0.0)) throw ParameterError("restart: Delta must be >= 0");
    if (!(C > 0.0)) throw ParameterError("restart: C must be > 0");
    if (!(eps > 0.0)) throw ParameterError("restart: eps must be > 0");
}

std::int64_t stage_count(double ratio) {
    if (!(ratio > 0.0)) return 0;
    return ceil_nonneg(1.0 + std::log2(ratio));
}

template <class RunStage>
RestartResult drive(const Point& y0, const HOracle& h, std::int64_t K, const std::vector<std::int64_t>& iters,
                    std::int64_t budget, std::uint64_t seed, RunStage&& run_stage) {
    RestartResult res;
    res.x = y0;
    std::int64_t used = 0;
    for (std::int64_t k = 0; k <= K; ++k) {
        std::int64_t Tk = iters[static_cast<std::size_t>(k)];
        if (budget > 0 && used + Tk > budget) {
            Tk = budget - used;
            res.budget_capped = true;
        }
        const Trajectory traj = run_stage(k, res.x, Tk, derive_seed(seed, 0x5eedULL, static_cast<std::uint64_t>(k)));
        if (traj.rows.empty()) break;
        if (k == 0) {
            res.traj = traj;
        } else {
            append_trajectory(res.traj, traj);
        }
        res.x = traj.last().x;
        RestartStage st;
        st.k = k;
        st.iters = traj.last().t;
        st.samples = traj.samples();
        st.h = h ? h(res.x) : std::numeric_limits<double>::quiet_NaN();
        res.stages.push_back(st);
        used += traj.last().t;
        if (traj.diverged || res.budget_capped) break;
    }
    return res;
}

}  // namespace

MinibatchPlan minibatch_plan(double Delta, double C, double tau, double B, double eps) {
    check_common(Delta, C, eps);
    if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("minibatch_restart: tau must lie in (0,1)");
    if (!(B >= 0.0)) throw ParameterError("minibatch_restart: B must be >= 0");
    MinibatchPlan plan;
    plan.K = stage_count(B / eps);
    plan.batch.push_back(1);
    plan.iters.push_back(ceil_nonneg(std::log(2.0 * C * Delta / eps) / tau));
    const std::int64_t Tk = ceil_nonneg(std::log(4.0 * C) / tau);
    for (std::int64_t k = 1; k <= plan.K; ++k) {
        plan.batch.push_back(std::int64_t{1} << std::min<std::int64_t>(k, 62));
        plan.iters.push_back(Tk);
    }
    return plan;
}

GeometricPlan geometric_plan(double Delta, double C, double D, double delta0, const std::function<double(double)>& psi,
                             double eps) {
    check_common(Delta, C, eps);
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw ParameterError("geometric_decay: delta0 must lie in (0,1)");
    if (!(D >= 0.0)) throw ParameterError("geometric_decay: D must be >= 0");
    GeometricPlan plan;
    plan.K = stage_count(D * delta0 / eps);
    for (std::int64_t k = 0; k <= plan.K; ++k) {
        const double dk = std::ldexp(delta0, -static_cast<int>(k));
        const double ps = psi(dk);
        if (!(ps > 0.0 && ps < 1.0)) throw ParameterError("geometric_decay: psi(delta) must lie in (0,1)");
        plan.delta.push_back(dk);
        const double num = k == 0 ? std::log(2.0 * C * Delta / eps) : std::log(4.0 * C);
        plan.iters.push_back(ceil_nonneg(num / ps));
    }
    return plan;
}

RestartResult minibatch_restart(const MinibatchInner& inner, const Point& y0, const HOracle& h, double Delta, double C,
                                double tau, double B, double eps, std::uint64_t seed, std::int64_t budget) {
    const MinibatchPlan plan = minibatch_plan(Delta, C, tau, B, eps);
    RestartResult res = drive(y0, h, plan.K, plan.iters, budget, seed,
                              [&](std::int64_t k, const Point& y, std::int64_t T, std::uint64_t s) {
                                  return inner(y, plan.batch[static_cast<std::size_t>(k)], T, s);
                              });
    for (auto& st : res.stages) st.batch = plan.batch[static_cast<std::size_t>(st.k)];
    return res;
}

RestartResult geometric_decay(const StepInner& inner, const Point& y0, const HOracle& h, double Delta, double C,
                              double D, double delta0, const std::function<double(double)>& psi, double eps,
                              std::uint64_t seed, std::int64_t budget) {
    const GeometricPlan plan = geometric_plan(Delta, C, D, delta0, psi, eps);
    RestartResult res = drive(y0, h, plan.K, plan.iters, budget, seed,
                              [&](std::int64_t k, const Point& y, std::int64_t T, std::uint64_t s) {
                                  return inner(y, plan.delta[static_cast<std::size_t>(k)], T, s);
                              });
    for (auto& st : res.stages) st.delta = plan.delta[static_cast<std::size_t>(st.k)];
    return res;
}

}  // namespace ddopt
