#include "ddopt/harness/acceptance.hpp"

#include "ddopt/algorithms/conceptual.hpp"
#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/online.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/core/averaging.hpp"
#include "ddopt/core/rng.hpp"
#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/harness/rate_fit.hpp"
#include "ddopt/harness/registry.hpp"
#include "ddopt/problems/instances.hpp"
#include "ddopt/problems/sensitivity.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ddopt {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED " << what << "; ";
        }
    }
};

std::string num(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

RunOptions with_ref(const Reference& ref) {
    RunOptions o;
    o.reference = &ref;
    return o;
}

// Per-step distance ratios |x_{t+1} - xb| / |x_t - xb| while the distance stays above `floor`.
std::vector<double> step_ratios(const Trajectory& tr, double floor) {
    std::vector<double> out;
    for (std::size_t i = 1; i < tr.rows.size(); ++i) {
        const double a = std::sqrt(tr.rows[i - 1].dist_sq);
        const double b = std::sqrt(tr.rows[i].dist_sq);
        if (a < floor || b < floor) break;
        out.push_back(b / a);
    }
    return out;
}

// 1. Exact conceptual contractions.
void conceptual_contraction(Outcome& o) {
    const DecisionProblem p = quad1d(0.5, 0.0);
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    const Point x0 = Point::Constant(1, -3.0);
    double worst = 0.0;

    auto exact = [&](ConceptualMethod m, double eta, double expected, const std::string& label) {
        const Trajectory tr = conceptual_run(p, x0, m, eta, 30, with_ref(ref));
        const auto r = step_ratios(tr, 1e-5);
        o.check(r.size() >= 5, label + " produced too few ratios");
        for (double v : r) {
            worst = std::max(worst, std::abs(v - expected));
            o.check(std::abs(v - expected) <= 1e-10, label + " ratio " + num(v, 15) + " != " + num(expected, 15));
        }
    };
    exact(ConceptualMethod::repeated_minimization, 1.0, 0.5, "rm");
    for (double eta : {0.5, 1.0, 2.0}) exact(ConceptualMethod::prox_point, eta, (1.0 + 0.5 * eta) / (1.0 + eta), "ppm eta=" + num(eta));
    for (double eta : {0.5, 1.0}) {
        const Trajectory tr = conceptual_run(p, x0, ConceptualMethod::prox_grad, eta, 30, with_ref(ref));
        const double bound = 0.5 * eta + std::sqrt(1.0 - eta);
        for (double v : step_ratios(tr, 1e-5))
            o.check(v <= bound + 1e-10, "pgm eta=" + num(eta) + " ratio " + num(v) + " > bound " + num(bound));
    }
    o.detail << "max |ratio - theory| (rm, ppm) = " << num(worst, 3);
}

// 2. Divergence boundary.
void divergence_boundary(Outcome& o) {
    {
        const DecisionProblem p = quad1d(1.2, 0.0);
        const Reference ref = make_reference(p, *algebraic_fixed_point(p));
        const Trajectory tr = conceptual_run(p, Point::Zero(1), ConceptualMethod::repeated_minimization, 1.0, 200, with_ref(ref));
        double worst = 0.0;
        for (double v : step_ratios(tr, 0.0)) worst = std::max(worst, std::abs(v - 1.2));
        o.check(worst <= 1e-9, "growth factor deviates from 1.2 by " + num(worst));
        o.check(tr.diverged, "divergence guard did not trip within 200 steps");
        o.detail << "gamma=1.2: |factor-1.2| <= " << num(worst, 3) << ", diverged at t=" << tr.last().t << "; ";
    }
    {
        const DecisionProblem p = quad1d(0.99, 0.0);
        const Reference ref = make_reference(p, closed_form_equilibrium(p));
        const Trajectory tr = conceptual_run(p, Point::Zero(1), ConceptualMethod::repeated_minimization, 1.0, 5000, with_ref(ref));
        o.check(!tr.diverged && tr.last().dist_sq < 1e-12, "gamma=0.99 did not converge");
        o.detail << "gamma=0.99: final dist_sq " << num(tr.last().dist_sq, 3);
    }
}

// 3. Relative bias identity.
void relative_bias(Outcome& o) {
    double worst = 0.0;
    for (double gamma : {0.1, 0.3, 0.5, 0.9}) {
        const DecisionProblem p = quad1d(gamma, 1.0);
        const Point xb = closed_form_equilibrium(p).x_bar;
        const CounterRng rng(derive_seed(2024, static_cast<std::uint64_t>(gamma * 1000)));
        for (std::uint64_t i = 0; i < 100; ++i) {
            Point x = xb + Point::Constant(1, 10.0 * (rng.uniform(i) - 0.5));
            if ((x - xb).norm() < 1e-3) x(0) += 1.0;
            const double num_ = (expected_grad(p, x, x) - expected_grad(p, xb, x)).norm();
            const double den = expected_grad(p, xb, x).norm();
            worst = std::max(worst, std::abs(num_ / den - p.constants.rho()));
        }
    }
    o.check(worst <= 1e-10, "relative bias deviates from rho by " + num(worst));
    o.detail << "max |ratio - rho| over 400 points = " << num(worst, 3);
}

// 4. SG noise ball.
void sg_noise_ball(Outcome& o) {
    const DecisionProblem p = quad1d(0.5, 1.0);
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    const double eta = 0.01;
    double sum = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        RunOptions opts = with_ref(ref);
        opts.record_every = 2000;
        sum += sg_run(p, Point::Zero(1), StepSchedule::constant(eta), 2000, s, opts).last().dist_sq;
    }
    const double mean = sum / 50.0;
    const double ahat = alpha_hat(p.constants, Target::distance);
    const double bound = 1.5 * 2.0 * p.constants.sigma_sq * eta / ahat;
    o.check(mean <= bound, "mean dist_sq " + num(mean) + " > " + num(bound));
    o.detail << "mean ||x_T - xb||^2 = " << num(mean) << " <= 1.5 * 2 sigma^2 eta / alpha_hat = " << num(bound);
}

// 5. ASG acceleration.
void asg_acceleration(Outcome& o) {
    const double kappa = 1e4;
    const double rho_bound = asg_rho_bound(kappa);
    const double gamma = 0.85 * rho_bound / kappa;  // beta = L = kappa, alpha = 1
    const DecisionProblem p = quadNd(2, gamma, kappa, 0.0);
    const ProblemConstants& c = p.constants;
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    const Point x0 = Point::Zero(2);

    RunOptions opts = with_ref(ref);
    opts.stop_tolerance = 1e-6;
    opts.stop_metric = Target::gap;
    const Trajectory asg = asg_run(p, x0, AsgOptions{}, 100000, 1, opts);
    const Trajectory sg = sg_run(p, x0, StepSchedule::constant(0.5 / c.L), 2000000, 1, opts);
    o.check(asg.converged && sg.converged, "a method did not reach gap 1e-6");
    const double t_asg = static_cast<double>(asg.last().t);
    const double t_sg = static_cast<double>(sg.last().t);
    o.check(t_asg <= t_sg / 10.0, "ASG iterations " + num(t_asg) + " > SG/10 = " + num(t_sg / 10.0));

    const double ahat = alpha_hat(c, Target::gap);
    const double q = 1.0 - std::sqrt(ahat / (4.0 * c.L));
    const double gap0 = asg.rows.front().gap;
    const std::int64_t burn = static_cast<std::int64_t>(0.1 * t_asg);
    double worst_env = 0.0;
    std::vector<double> ts;
    std::vector<double> gs;
    for (const auto& r : asg.rows) {
        if (r.t < burn) continue;
        const double env = 2.0 * std::pow(q, static_cast<double>(r.t)) * gap0;
        worst_env = std::max(worst_env, r.gap / env);
        ts.push_back(static_cast<double>(r.t));
        gs.push_back(r.gap);
    }
    o.check(worst_env <= 1.05, "ASG gap exceeds 1.05 x the theory envelope (ratio " + num(worst_env) + ")");
    FitOptions fo;
    fo.metric = Target::gap;
    fo.burn_in = 0.0;
    fo.floor = 0.0;
    const RateFit fit = fit_series(ts, gs, fo);
    o.check(fit.available, "rate fit unavailable: " + fit.diagnostic);
    if (fit.available) {
        o.check(-std::log(fit.factor) >= 0.95 * -std::log(q),
                "fitted factor " + num(fit.factor, 8) + " slower than theory " + num(q, 8) + " by more than 5%");
    }
    o.detail << "rho=" << num(c.rho(), 3) << " (bound " << num(rho_bound, 3) << "), iterations to gap<=1e-6: ASG "
             << t_asg << ", SG " << t_sg << "; max gap/envelope " << num(worst_env, 3) << ", fitted factor "
             << num(fit.factor, 8) << " vs theory " << num(q, 8);
}

// 6. Model-subproblem oracle.
struct Instance1d {
    double x, z, eta;
    Regularizer reg = Regularizer::zero();
};

double reg_value_1d(const Regularizer& r, double y) {
    switch (r.kind()) {
    case Regularizer::Kind::zero: return 0.0;
    case Regularizer::Kind::scaled_squared_norm: return 0.5 * r.mu() * y * y;
    case Regularizer::Kind::l1: return r.lambda() * std::abs(y);
    case Regularizer::Kind::box: return y < r.lo() || y > r.hi() ? std::numeric_limits<double>::infinity() : 0.0;
    case Regularizer::Kind::ball: return std::abs(y) > r.radius() ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return 0.0;
}

double model_value_1d(Model m, const Instance1d& in, double y) {
    const double loss = 0.5 * (in.x - in.z) * (in.x - in.z);
    const double g = in.x - in.z;
    double model = 0.0;
    if (m == Model::full) model = 0.5 * (y - in.z) * (y - in.z);
    else model = loss + g * (y - in.x);
    if (m == Model::clipped) model = std::max(model, 0.0);
    return model + reg_value_1d(in.reg, y) + (y - in.x) * (y - in.x) / (2.0 * in.eta);
}

Instance1d random_instance(const CounterRng& rng, std::uint64_t i) {
    auto u = [&](std::uint64_t k) { return rng.uniform(16 * i + k); };
    Instance1d in;
    in.x = 4.0 * u(0) - 2.0;
    double gap = 0.05 + 2.0 * u(1);
    in.z = in.x + (u(2) < 0.5 ? -gap : gap);
    in.eta = 0.05 + u(3);
    const std::uint64_t kind = rng.index(16 * i + 4, 5);
    double pull = 0.0;
    switch (kind) {
    case 0: in.reg = Regularizer::zero(); break;
    case 1: {
        const double mu = 2.0 * u(5);
        in.reg = Regularizer::scaled_squared_norm(mu);
        pull = mu * (std::abs(in.x) + gap);
        break;
    }
    case 2: {
        const double lam = 1.5 * u(5);
        in.reg = Regularizer::l1(lam);
        pull = lam;
        break;
    }
    case 3: in.reg = Regularizer::box(in.x - 0.5 * u(5) - 1e-3, in.x + 0.5 * u(6) + 1e-3); break;
    default: in.reg = Regularizer::ball(std::abs(in.x) + 0.5 * u(5) + 1e-3); break;
    }
    // Keep the search half-width 5 eta (|g| + pull) at most 0.5 so the grid spacing stays below 1e-6.
    const double s = in.eta * (gap + pull);
    if (s > 0.1) in.eta *= 0.1 / s;
    return in;
}

void model_oracle(Outcome& o) {
    const CounterRng rng(derive_seed(77, 6));
    const std::int64_t grid_n = 1000000;
    double worst_arg = 0.0;
    double worst_val = -std::numeric_limits<double>::infinity();
    int count = 0;
    for (Model m : {Model::full, Model::linear, Model::clipped}) {
        for (std::uint64_t i = 0; i < 200; ++i) {
            const Instance1d in = random_instance(rng, i + 1000 * static_cast<std::uint64_t>(m));
            DecisionProblem p = quad1d(0.0, 0.0, 0.0, in.reg);
            Matrix batch(1, 1);
            batch(0, 0) = in.z;
            const double y = model_step(p, m, Point::Constant(1, in.x), batch, in.eta)(0);

            const double g = std::abs(in.x - in.z);
            double pull = 0.0;
            if (in.reg.kind() == Regularizer::Kind::l1) pull = in.reg.lambda();
            if (in.reg.kind() == Regularizer::Kind::scaled_squared_norm) pull = in.reg.mu() * (std::abs(in.x) + g);
            const double half = 5.0 * in.eta * (g + pull);
            const double lo = in.x - half;
            const double step = 2.0 * half / static_cast<double>(grid_n);
            double best = std::numeric_limits<double>::infinity();
            double best_y = lo;
            for (std::int64_t k = 0; k <= grid_n; ++k) {
                const double yy = lo + step * static_cast<double>(k);
                const double v = model_value_1d(m, in, yy);
                if (v < best) {
                    best = v;
                    best_y = yy;
                }
            }
            const double arg_err = std::abs(y - best_y);
            const double val_err = model_value_1d(m, in, y) - best;
            worst_arg = std::max(worst_arg, arg_err);
            worst_val = std::max(worst_val, val_err);
            ++count;
            if (arg_err > 1e-6 || val_err > 1e-8) {
                o.check(false, to_string(m) + " instance " + std::to_string(i) + " (" + in.reg.describe() + ") arg error " +
                                   num(arg_err) + ", value excess " + num(val_err));
            }
        }
    }
    o.detail << count << " instances, max |x+ - grid argmin| = " << num(worst_arg, 3)
             << ", max value excess over grid min = " << num(worst_val, 3);
}

// 7. Stagewise deployments grow like log(1/eps).
void stagewise_deployments(Outcome& o) {
    const DecisionProblem p = quad1d(0.3, 1.0);
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    RunContext ctx;
    ctx.reference = &ref;
    ctx.target = Target::gap;
    ctx.record_every = 1000000;
    const Point x0 = Point::Zero(1);
    const std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4};

    auto deployments_for = [&](const std::string& algo, const std::string& wrap, double eps) {
        AlgorithmSpec s;
        s.name = algo;
        s.wrap = wrap;
        s.eps = eps;
        s.model = "linear";
        return run_algorithm(p, s, x0, 0, 1, ctx);
    };
    std::vector<double> logs;
    for (double e : eps_grid) logs.push_back(std::log(1.0 / e));
    double ratio_min = std::numeric_limits<double>::infinity();
    for (const auto& [algo, wrap] : std::vector<std::pair<std::string, std::string>>{
             {"stage-mba-ii", "restart-geo"}, {"stage-asg", "restart-minibatch"}}) {
        std::vector<double> deps;
        std::int64_t last_dep = 0;
        for (double e : eps_grid) {
            const Trajectory tr = deployments_for(algo, wrap, e);
            deps.push_back(static_cast<double>(tr.deployments()));
            last_dep = tr.deployments();
        }
        const LineFit f = least_squares(logs, deps);
        o.check(f.r2 > 0.9, algo + " deployments vs log(1/eps) R^2 = " + num(f.r2));
        o.detail << algo << " deployments";
        for (double d : deps) o.detail << ' ' << d;
        o.detail << " (R^2 " << num(f.r2, 4) << "); ";
        const Trajectory greedy = deployments_for("sg", "restart-geo", 1e-4);
        o.check(greedy.deployments() == greedy.samples(), "greedy SG deployments != samples");
        const double ratio = static_cast<double>(greedy.deployments()) / static_cast<double>(last_dep);
        ratio_min = std::min(ratio_min, ratio);
        o.check(ratio >= 1e3, "greedy/" + algo + " deployment ratio " + num(ratio) + " < 1e3");
    }
    o.detail << "min greedy/stagewise deployment ratio at eps=1e-4: " << num(ratio_min, 4);
}

// 8. Restart drivers.
void restart_drivers(Outcome& o) {
    const DecisionProblem p = quad1d(0.5, 1.0);
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    RunContext ctx;
    ctx.reference = &ref;
    ctx.target = Target::distance;
    ctx.record_every = 1000000000;
    const Point x0 = Point::Zero(1);
    AlgorithmSpec s;
    s.name = "sg";
    s.wrap = "restart-geo";
    const ProblemConstants& c = p.constants;
    for (double eps : {1e-2, 1e-3}) {
        s.eps = eps;
        // Independent evaluation of the stage counts.
        const double ahat = c.alpha - c.gamma * c.beta;
        const double cpsi = 2.0 * ahat / 3.0;
        const double delta0 = 1.0 / (c.gamma * c.gamma * c.beta * c.beta / ahat + c.L);
        const double D = 2.0 * c.sigma_sq / ahat;
        const double Delta = (x0 - ref.x_bar).squaredNorm();
        std::int64_t K = 0;
        while (static_cast<double>(K) < 1.0 + std::log(D * delta0 / eps) / std::log(2.0)) ++K;
        std::vector<std::int64_t> T{static_cast<std::int64_t>(std::ceil(std::log(2.0 * Delta / eps) / (cpsi * delta0)))};
        for (std::int64_t k = 1; k <= K; ++k)
            T.push_back(static_cast<std::int64_t>(std::ceil(std::log(4.0) / (cpsi * delta0 / std::pow(2.0, k)))));

        double sum = 0.0;
        bool counts_ok = true;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const RestartResult res = run_restart(p, s, x0, 0, seed, ctx);
            sum += (res.x - ref.x_bar).squaredNorm();
            if (static_cast<std::int64_t>(res.stages.size()) != K + 1) counts_ok = false;
            for (std::size_t k = 0; k < res.stages.size() && k < T.size(); ++k) {
                if (res.stages[k].iters != T[k]) counts_ok = false;
            }
        }
        const double mean = sum / 50.0;
        o.check(counts_ok, "stage counts differ from K=" + std::to_string(K) + " / T_k formulas at eps=" + num(eps));
        o.check(mean <= 1.5 * eps, "mean dist_sq " + num(mean) + " > 1.5 eps at eps=" + num(eps));
        o.detail << "eps=" << num(eps) << ": K=" << K << ", T_0=" << T.front() << ", T_K=" << T.back()
                 << ", mean dist_sq " << num(mean, 4) << "; ";
    }
}

// 9. Online reduction.
void online_reduction(Outcome& o) {
    const DecisionProblem p = quad1d(0.3, 1.0, 1.0, Regularizer::ball(2.0));
    const EquilibriumCertificate cert = closed_form_equilibrium(p);
    const Reference ref = make_reference(p, cert);
    const ProblemConstants& c = p.constants;
    const std::int64_t T = 10000;
    const std::vector<std::int64_t> grid = [&] {
        std::vector<std::int64_t> g;
        for (double lt = std::log(100.0); lt <= std::log(static_cast<double>(T)) + 1e-9; lt += 0.1)
            g.push_back(static_cast<std::int64_t>(std::llround(std::exp(lt))));
        if (g.back() != T) g.push_back(T);
        return g;
    }();
    std::vector<double> gap_sum(grid.size(), 0.0);
    double G = 0.0;
    const int seeds = 50;
    for (int s = 1; s <= seeds; ++s) {
        const Trajectory tr =
            online_avg_run(p, cert.x_bar, OnlineMethod::prox_grad, StepSchedule::inverse_time(c.alpha), T,
                           static_cast<std::uint64_t>(s), RunOptions{});
        G = std::max(G, tr.max_grad_norm);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& row = tr.rows[static_cast<std::size_t>(grid[i])];
            gap_sum[i] += ref.gap(row.x_avg).first;
        }
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        x.push_back(std::log(static_cast<double>(grid[i])));
        y.push_back(gap_sum[i] / seeds * static_cast<double>(grid[i]));
    }
    const LineFit f = least_squares(x, y);
    o.check(std::isfinite(f.slope) && f.slope > 0.0, "slope of gap*t vs log t is " + num(f.slope));
    const double gap_T = gap_sum.back() / seeds;
    const double U = G * G / c.alpha * std::log(static_cast<double>(T));
    const double predicted = U / ((1.0 - 2.0 * c.rho()) * static_cast<double>(T));
    o.check(gap_T <= 10.0 * predicted, "gap at T " + num(gap_T) + " > 10 x predicted " + num(predicted));
    o.detail << "slope " << num(f.slope, 4) << " (R^2 " << num(f.r2, 3) << "), gap(1e4) = " << num(gap_T, 4)
             << ", predicted U_t/((1-2rho)t) = " << num(predicted, 4) << " with G = " << num(G, 4);
}

// 10. Sensitivity bounds.
void sensitivity(Outcome& o) {
    double worst = 0.0;
    for (double gamma : {0.2, 0.5, 0.8}) {
        const DecisionProblem p = quad1d(gamma, 1.0);
        const CounterRng rng(derive_seed(10, static_cast<std::uint64_t>(gamma * 100)));
        for (std::uint64_t k = 0; k < 20; ++k) {
            const Point x = Point::Constant(1, 6.0 * rng.uniform(4 * k) - 3.0);
            const Point y = Point::Constant(1, 6.0 * rng.uniform(4 * k + 1) - 3.0);
            const Point u = Point::Constant(1, 6.0 * rng.uniform(4 * k + 2) - 3.0);
            const Point v = Point::Constant(1, 6.0 * rng.uniform(4 * k + 3) - 3.0);
            const double w1 = std::abs(gamma * (x - y)(0));
            const double bb = p.constants.beta;
            for (int j = 0; j < 10; ++j) {
                const Point w = x + (-1.0 + 3.0 * j / 9.0) * (y - x);
                const double dev = (expected_grad(p, x, w) - expected_grad(p, y, w)).norm();
                worst = std::max(worst, std::abs(dev - bb * w1));
            }
            const double gx = expected_loss(p, x, u) - expected_loss(p, x, v);
            const double gy = expected_loss(p, y, u) - expected_loss(p, y, v);
            worst = std::max(worst, std::abs(std::abs(gx - gy) - bb * (u - v).norm() * w1));
        }
    }
    o.check(worst <= 1e-10, "analytic deviation differs from the bound by " + num(worst));
    o.detail << "gaussian-quadratic max |deviation - bound| = " << num(worst, 3) << "; ";

    const DecisionProblem sl = strategic_logistic(200, 0.2, 0.5);
    int mc_pass = 0;
    const int pairs = 5;
    for (int k = 0; k < pairs; ++k) {
        const CounterRng rng(derive_seed(11, static_cast<std::uint64_t>(k)));
        Point x(sl.dim);
        Point y(sl.dim);
        for (Eigen::Index i = 0; i < sl.dim; ++i) {
            x(i) = 2.0 * rng.normal(static_cast<std::uint64_t>(i));
            y(i) = 2.0 * rng.normal(static_cast<std::uint64_t>(i + 100));
        }
        const DeviationReport rep = deviation_check(sl, x, y, 20000, derive_seed(12, static_cast<std::uint64_t>(k)));
        if (rep.pass) ++mc_pass;
        else
            o.check(false, "strategic-logistic pair " + std::to_string(k) + ": grad " + num(rep.grad_deviation) + " vs " +
                               num(rep.grad_bound) + ", gap " + num(rep.gap_deviation) + " vs " + num(rep.gap_bound));
    }
    o.detail << "strategic-logistic Monte Carlo within 3 s.e.: " << mc_pass << "/" << pairs << " pairs";
}

// 11. Averaging identities.
void averaging_identities(Outcome& o) {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const CounterRng rng(derive_seed(99, s));
        const std::size_t len = 1 + rng.index(0, 200);
        std::vector<double> d(len);
        for (std::size_t i = 0; i < len; ++i) d[i] = 0.001 + 0.998 * rng.uniform(i + 1);
        const GammaProducts gp = gamma_products(d);
        worst = std::max(worst, gp.residual * gp.gamma.back());
    }
    o.check(worst <= 1e-10, "gamma_products relative residual " + num(worst));
    o.detail << "max relative residual over 1000 sequences = " << num(worst, 3) << "; ";

    // Synthetic recursion delta h(x_t) = (1 - c1 delta) D_{t-1} - (1 + c2 delta) D_t + omega with h = ||.||^2.
    struct Case {
        double c1, c2;
    };
    const double delta = 0.1;
    const double omega = 0.01;
    double worst_gamma = 0.0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (const Case& cs : {Case{1.0, 0.0}, Case{0.5, 0.5}, Case{2.0, -0.5}, Case{-0.3, 1.0}, Case{3.0, 2.0}}) {
        const CounterRng rng(derive_seed(100, static_cast<std::uint64_t>((cs.c1 + 10) * 100 + cs.c2 * 10)));
        const Point x0 = Point::Constant(3, 1.0);
        const double h0 = x0.squaredNorm();
        const double D0 = 2.0;
        double D = D0;
        ScheduleState st(x0);
        const double factor = (1.0 - cs.c1 * delta) / (1.0 + cs.c2 * delta);
        for (std::int64_t t = 1; t <= 200; ++t) {
            Point x(3);
            for (int i = 0; i < 3; ++i) x(i) = rng.normal(static_cast<std::uint64_t>(3 * t + i));
            const double budget = (1.0 - cs.c1 * delta) * D + omega;
            double h = x.squaredNorm();
            if (delta * h > 0.9 * budget) {
                x *= std::sqrt(0.9 * budget / (delta * h));
                h = x.squaredNorm();
            }
            D = (budget - delta * h) / (1.0 + cs.c2 * delta);
            st = averaging_update(std::move(st), x, cs.c1, cs.c2, delta);
            const double expect = std::pow(factor, static_cast<double>(t));
            worst_gamma = std::max(worst_gamma, std::abs(st.gamma_hat() - expect) / expect);
            const double lhs = st.average().squaredNorm() + (cs.c1 + cs.c2) * D;
            const double rhs = constant_parameter_bound(h0, D0, cs.c1, cs.c2, delta, omega, t);
            worst_excess = std::max(worst_excess, (lhs - rhs) / rhs);
        }
    }
    o.check(worst_gamma <= 1e-12, "Gamma_hat deviates from ((1-c1 d)/(1+c2 d))^t by " + num(worst_gamma));
    o.check(worst_excess <= 1e-12, "averaged recursion exceeds the constant-parameter bound (relative " + num(worst_excess) + ")");
    o.detail << "Gamma_hat relative error " << num(worst_gamma, 3) << ", max relative (lhs - bound) " << num(worst_excess, 3);
}

using Body = void (*)(Outcome&);

struct Entry {
    CriterionInfo info;
    Body body;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{1, "conceptual-contraction", 1.0}, conceptual_contraction},
        {{2, "divergence-boundary", 1.0}, divergence_boundary},
        {{3, "relative-bias", 1.0}, relative_bias},
        {{4, "sg-noise-ball", 5.0}, sg_noise_ball},
        {{5, "asg-acceleration", 10.0}, asg_acceleration},
        {{6, "model-oracle", 30.0}, model_oracle},
        {{7, "stagewise-deployments", 60.0}, stagewise_deployments},
        {{8, "restart-drivers", 30.0}, restart_drivers},
        {{9, "online-reduction", 60.0}, online_reduction},
        {{10, "sensitivity", 10.0}, sensitivity},
        {{11, "averaging-identities", 5.0}, averaging_identities},
    };
    return e;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> infos = [] {
        std::vector<CriterionInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

CriterionResult run_criterion(int id) {
    for (const auto& e : entries()) {
        if (e.info.id != id) continue;
        CriterionResult r;
        r.id = id;
        r.name = e.info.name;
        r.time_limit = e.info.time_limit;
        Outcome o;
        const auto start = Clock::now();
        try {
            e.body(o);
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail << "exception: " << ex.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        r.pass = o.pass;
        r.detail = o.detail.str();
        if (r.seconds > r.time_limit) {
            r.pass = false;
            r.detail += " [runtime " + num(r.seconds, 3) + " s exceeds " + num(r.time_limit, 3) + " s]";
        }
        return r;
    }
    CriterionResult r;
    r.id = id;
    r.name = "unknown";
    r.detail = "no criterion with id " + std::to_string(id);
    return r;
}

CriterionResult run_criterion(const std::string& name_or_id) {
    for (const auto& e : entries()) {
        if (e.info.name == name_or_id || std::to_string(e.info.id) == name_or_id) return run_criterion(e.info.id);
    }
    CriterionResult r;
    r.name = name_or_id;
    r.detail = "unknown criterion '" + name_or_id + "'";
    return r;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << num(r.seconds, 3) << " s): " << r.detail;
    return os.str();
}

}  // namespace ddopt
