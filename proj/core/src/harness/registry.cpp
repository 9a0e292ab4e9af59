#include "ddopt/harness/registry.hpp"

#include "ddopt/algorithms/conceptual.hpp"
#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/online.hpp"
#include "ddopt/algorithms/stagewise.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/problems/instances.hpp"

#include <cmath>
#include <limits>

namespace ddopt {

namespace {

Model parse_model(const std::string& s) {
    if (s == "full") return Model::full;
    if (s == "linear") return Model::linear;
    if (s == "clipped") return Model::clipped;
    throw ParameterError("unknown model '" + s + "'");
}

bool is_mba(const std::string& n) { return n == "mba-full" || n == "mba-linear" || n == "mba-clipped"; }

Model mba_model(const std::string& n) { return parse_model(n.substr(4)); }

double pos_inv(double v) { return v > 0.0 ? 1.0 / v : std::numeric_limits<double>::infinity(); }

StepSchedule make_schedule(const DecisionProblem& p, const AlgorithmSpec& s, double eta) {
    if (s.schedule == "constant") return StepSchedule::constant(eta);
    if (s.schedule == "inverse_time") return StepSchedule::inverse_time(s.schedule_a > 0.0 ? s.schedule_a : p.constants.alpha);
    if (s.schedule == "linear_growth") return StepSchedule::linear_growth(s.schedule_a > 0.0 ? s.schedule_a : p.constants.L);
    throw ParameterError("unknown schedule '" + s.schedule + "'");
}

RunOptions make_options(const AlgorithmSpec& s, const RunContext& ctx) {
    RunOptions o;
    o.reference = ctx.reference;
    o.record_every = ctx.record_every;
    o.batch = s.batch;
    o.average = s.average;
    o.stop_tolerance = ctx.stop_tolerance;
    o.stop_metric = ctx.target;
    return o;
}

Trajectory run_plain(const DecisionProblem& p, const AlgorithmSpec& s, const Point& x0, std::int64_t T,
                     std::uint64_t seed, const RunOptions& o) {
    const std::string& n = s.name;
    const double eta = s.eta > 0.0 ? s.eta : default_eta(p, n);
    if (n == "rm") return conceptual_run(p, x0, ConceptualMethod::repeated_minimization, 1.0, T, o);
    if (n == "ppm") return conceptual_run(p, x0, ConceptualMethod::prox_point, eta, T, o);
    if (n == "pgm") return conceptual_run(p, x0, ConceptualMethod::prox_grad, eta, T, o);
    if (n == "sg") return sg_run(p, x0, make_schedule(p, s, eta), T, seed, o);
    if (n == "asg") return asg_run(p, x0, AsgOptions{eta, s.gamma0}, T, seed, o);
    if (is_mba(n)) {
        Trajectory t = mba_run(p, x0, ModelKind{mba_model(n), s.batch}, make_schedule(p, s, eta), T, seed, o);
        return t;
    }
    if (n == "online-pg" || n == "dual-avg") {
        AlgorithmSpec sched = s;
        if (s.schedule == "constant" && s.eta <= 0.0) sched.schedule = n == "online-pg" ? "inverse_time" : "linear_growth";
        const OnlineMethod m = n == "online-pg" ? OnlineMethod::prox_grad : OnlineMethod::dual_averaging;
        return online_avg_run(p, x0, m, make_schedule(p, sched, eta), T, seed, o);
    }
    if (n == "stage-mba-i" || n == "stage-mba-ii") {
        const StageVersion v = n == "stage-mba-i" ? StageVersion::I : StageVersion::II;
        return stagewise_mba_run(p, x0, ModelKind{parse_model(s.model), s.batch}, v, eta, T, seed, o, s.inner_J);
    }
    if (n == "stage-asg") return stagewise_asg_run(p, x0, s.inner_J, T, seed, o);
    throw ParameterError("unknown algorithm '" + n + "'");
}

double estimate_delta(const AlgorithmSpec& s, const Point& x0, const RunContext& ctx) {
    if (s.Delta > 0.0) return s.Delta;
    if (ctx.reference == nullptr) throw ParameterError("restart: Delta must be given when no equilibrium oracle exists");
    if (ctx.target == Target::distance) return (x0 - ctx.reference->x_bar).squaredNorm();
    if (!ctx.reference->gap) throw ParameterError("restart: gap target needs a gap oracle");
    const auto [g, se] = ctx.reference->gap(x0);
    return std::max(0.0, g + 3.0 * se);
}

HOracle make_h(const RunContext& ctx) {
    if (ctx.reference == nullptr) return {};
    const Reference* ref = ctx.reference;
    if (ctx.target == Target::distance) return [ref](const Point& x) { return (x - ref->x_bar).squaredNorm(); };
    return [ref](const Point& x) { return ref->gap(x).first; };
}

}  // namespace

std::vector<std::string> problem_names() { return {"quad1d", "quadNd", "strategic-logistic"}; }

std::vector<std::string> algorithm_names() {
    return {"rm",        "ppm",       "pgm",      "sg",          "asg",          "mba-full", "mba-linear",
            "mba-clipped", "online-pg", "dual-avg", "stage-mba-i", "stage-mba-ii", "stage-asg"};
}

Regularizer build_regularizer(const RegularizerSpec& r) {
    if (r.kind == "zero") return Regularizer::zero();
    if (r.kind == "ssn") return Regularizer::scaled_squared_norm(r.mu);
    if (r.kind == "l1") return Regularizer::l1(r.lambda);
    if (r.kind == "box") return Regularizer::box(r.lo, r.hi);
    if (r.kind == "ball") return Regularizer::ball(r.radius);
    throw ParameterError("unknown regularizer '" + r.kind + "'");
}

DecisionProblem build_problem(const ProblemSpec& s) {
    const Regularizer reg = build_regularizer(s.reg);
    if (s.name == "quad1d") return quad1d(s.gamma, s.sigma, s.m0, reg);
    if (s.name == "quadNd") return quadNd(s.d, s.gamma, s.kappa, s.sigma, reg);
    if (s.name == "strategic-logistic") {
        if (!s.population_csv.empty())
            return strategic_logistic(load_population_csv(s.population_csv), s.gamma, s.lambda, s.x_bound, reg);
        Population pop = synthetic_population(s.n_agents, s.d, s.population_seed);
        return strategic_logistic(std::move(pop), s.gamma, s.lambda, s.x_bound, reg);
    }
    throw ParameterError("unknown problem '" + s.name + "'");
}

Point initial_point(const ProblemSpec& s, Eigen::Index dim) {
    if (s.x0.empty()) return Point::Zero(dim);
    if (s.x0.size() == 1) return Point::Constant(dim, s.x0[0]);
    if (static_cast<Eigen::Index>(s.x0.size()) != dim) throw ParameterError("x0 has the wrong dimension");
    return Eigen::Map<const Point>(s.x0.data(), dim);
}

double default_eta(const DecisionProblem& p, const std::string& n) {
    const ProblemConstants& c = p.constants;
    if (n == "rm" || n == "ppm") return 1.0;
    if (n == "pgm") return 1.0 / c.L;
    if (n == "asg" || n == "sg" || is_mba(n)) return 0.25 / c.L;
    if (n == "online-pg" || n == "dual-avg") return 0.25 / c.L;
    if (n == "stage-mba-i" || n == "stage-mba-ii") {
        const StageVersion v = n == "stage-mba-i" ? StageVersion::I : StageVersion::II;
        return stagewise_eta_cap(v, c.model(Model::linear, 1), c.gamma * c.beta, c.L);
    }
    return 1.0 / c.L;
}

GeometricParams geometric_params(const DecisionProblem& p, const AlgorithmSpec& s, Target target) {
    const ProblemConstants& c = p.constants;
    const double gb = c.gamma * c.beta;
    GeometricParams g;
    const std::string& n = s.name;
    if (n == "sg") {
        const double sigma_sq = c.sigma_sq / static_cast<double>(s.batch);
        const double ahat = alpha_hat(c, target);
        if (!(ahat > 0.0)) throw ParameterError("restart-geo: alpha_hat must be > 0");
        if (target == Target::distance) {
            g.c_psi = 2.0 * ahat / 3.0;
            g.C = 1.0;
            g.delta0 = 1.0 / (gb * gb / ahat + c.L);
            g.D = 2.0 * sigma_sq / ahat;
        } else {
            g.c_psi = ahat / 2.0;
            g.C = 2.0;
            g.delta0 = 0.5 / (gb * gb / ahat + c.L);
            g.D = sigma_sq;
        }
        return g;
    }
    if (is_mba(n)) {
        const ModelConstants m = c.model(mba_model(n), s.batch);
        const double ahat = alpha_hat(m, gb, target);
        if (!(ahat > 0.0)) throw ParameterError("restart-geo: alpha_hat must be > 0");
        g.c_psi = ahat / 2.0;
        const double s0 = m.sigma0 * m.sigma0;
        if (target == Target::distance) {
            g.C = 1.0;
            g.delta0 = std::min({0.5 / c.L, pos_inv(m.alpha1), pos_inv(m.alpha2)});
            g.D = s0 / (2.0 * ahat);
        } else {
            g.C = 2.0;
            g.delta0 = std::min({0.5 / c.L, pos_inv(m.alpha1 - gb), pos_inv(m.alpha2 - gb)});
            g.D = s0;
        }
        return g;
    }
    if (n == "stage-mba-i" || n == "stage-mba-ii") {
        const ModelConstants m = c.model(parse_model(s.model), s.batch);
        const double sum = m.alpha1 + m.alpha2;
        const double s0 = m.sigma0 * m.sigma0;
        g.constant_psi = true;
        g.C = 1.0;
        if (n == "stage-mba-i") {
            if (target != Target::distance) throw ParameterError("restart-geo: stage-mba-i supports the distance target");
            g.c_psi = 0.5 * (1.0 - gb / (2.0 * sum - gb));
            g.D = 2.0 * s0 / (sum - gb);
            g.delta0 = 0.5 / c.L;
        } else {
            if (target != Target::gap) throw ParameterError("restart-geo: stage-mba-ii supports the gap target");
            g.c_psi = 0.5 * (1.0 - gb / sum);
            g.D = 2.0 * s0 / (1.0 - gb / sum);
            g.delta0 = std::min({0.5 / c.L, pos_inv(gb - m.alpha1), pos_inv(m.alpha2)});
        }
        if (!(gb / sum < 1.0)) throw ParameterError("restart-geo: regime requires gamma*beta/(alpha1+alpha2) < 1");
        return g;
    }
    throw ParameterError("restart-geo: unsupported algorithm '" + n + "'");
}

MinibatchParams minibatch_params(const DecisionProblem& p, const AlgorithmSpec& s, Target target) {
    const ProblemConstants& c = p.constants;
    if (target != Target::gap) throw ParameterError("restart-minibatch: supports the gap target");
    MinibatchParams m;
    if (s.name == "asg") {
        const double ahat = alpha_hat(c, Target::gap);
        if (!(ahat > 0.0)) throw ParameterError("restart-minibatch: alpha_hat must be > 0");
        m.tau = std::sqrt(ahat / (4.0 * c.L));
        m.C = 2.0;
        m.B = 9.0 * c.sigma_sq / (16.0 * std::sqrt(c.L * ahat));
        return m;
    }
    if (s.name == "stage-asg") {
        const double rho = c.rho();
        if (!(rho < 0.5)) throw ParameterError("restart-minibatch: stage-asg requires rho < 1/2");
        m.tau = 1.0 - 1.0 / (2.0 * (1.0 - rho));
        m.C = 1.0;
        m.B = 32.0 * c.sigma_sq / (5.0 * (1.0 - rho / (1.0 - rho)) * std::sqrt(c.alpha * c.L));
        return m;
    }
    throw ParameterError("restart-minibatch: unsupported algorithm '" + s.name + "'");
}

RestartResult run_restart(const DecisionProblem& p, const AlgorithmSpec& s, const Point& x0, std::int64_t budget,
                          std::uint64_t seed, const RunContext& ctx) {
    const RunOptions base = make_options(s, ctx);
    const double Delta = estimate_delta(s, x0, ctx);
    const HOracle h = make_h(ctx);
    RestartResult res;
    if (s.wrap == "restart-geo") {
        const GeometricParams g = geometric_params(p, s, ctx.target);
        std::function<double(double)> psi;
        if (g.constant_psi) psi = [v = g.c_psi](double) { return v; };
        else psi = [v = g.c_psi](double d) { return v * d; };
        const StepInner inner = [&](const Point& y, double delta, std::int64_t T, std::uint64_t stage_seed) {
            AlgorithmSpec inner_spec = s;
            inner_spec.schedule = "constant";
            inner_spec.eta = delta;
            RunOptions o = base;
            o.average = s.average;
            return run_plain(p, inner_spec, y, T, stage_seed, o);
        };
        res = geometric_decay(inner, x0, h, Delta, g.C, g.D, g.delta0, psi, s.eps, seed, budget);
    } else if (s.wrap == "restart-minibatch") {
        const MinibatchParams m = minibatch_params(p, s, ctx.target);
        const MinibatchInner inner = [&](const Point& y, std::int64_t batch, std::int64_t T, std::uint64_t stage_seed) {
            AlgorithmSpec inner_spec = s;
            inner_spec.batch = batch;
            RunOptions o = base;
            o.batch = batch;
            return run_plain(p, inner_spec, y, T, stage_seed, o);
        };
        res = minibatch_restart(inner, x0, h, Delta, m.C, m.tau, m.B, s.eps, seed, budget);
    } else {
        throw ParameterError("unknown wrapper '" + s.wrap + "'");
    }
    res.traj.algo = s.wrap + "/" + s.name;
    return res;
}

Trajectory run_algorithm(const DecisionProblem& p, const AlgorithmSpec& spec, const Point& x0, std::int64_t budget,
                         std::uint64_t seed, const RunContext& ctx) {
    if (!spec.wrap.empty()) return run_restart(p, spec, x0, budget, seed, ctx).traj;
    return run_plain(p, spec, x0, budget, seed, make_options(spec, ctx));
}

}  // namespace ddopt
