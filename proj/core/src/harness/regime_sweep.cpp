#include "ddopt/harness/regime_sweep.hpp"

#include "ddopt/harness/experiment.hpp"
#include "ddopt/harness/rate_fit.hpp"
#include "ddopt/harness/registry.hpp"

#include <cmath>
#include <limits>

namespace ddopt {

std::string to_string(RegimeVerdict v) {
    switch (v) {
    case RegimeVerdict::converges: return "converges";
    case RegimeVerdict::diverges: return "diverges";
    case RegimeVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

double theory_distance_factor(const std::string& algo, double alpha, double beta, double gamma, double L, double eta) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (algo == "rm") return gamma * beta / alpha;
    if (algo == "ppm") return (1.0 + gamma * eta * beta) / (1.0 + eta * alpha);
    if (algo == "pgm") return eta <= 1.0 / L ? std::sqrt(1.0 - eta * alpha) + gamma * eta * beta : nan;
    if (algo == "sg" || algo == "mba-linear") {
        const double ahat = alpha - gamma * beta;
        const double q = 1.0 - 2.0 * eta * ahat / 3.0;
        return ahat > 0.0 && q > 0.0 ? std::sqrt(q) : nan;
    }
    return nan;
}

std::vector<SweepRow> regime_sweep(const ProblemSpec& problem, const AlgorithmSpec& algo, const std::vector<double>& gammas,
                                   const std::vector<std::uint64_t>& seeds, std::int64_t budget, Target target,
                                   int threads) {
    if (seeds.empty()) throw ParameterError("regime_sweep: seeds must be non-empty");
    for (double g : gammas) {
        if (!(g >= 0.0 && g < 2.0)) throw ParameterError("regime_sweep: grid must lie in [0, 2)");
    }
    std::vector<SweepRow> out(gammas.size());
    parallel_for(gammas.size(), threads, [&](std::size_t gi) {
        ProblemSpec ps = problem;
        ps.gamma = gammas[gi];
        const DecisionProblem p = build_problem(ps);
        const auto ref = reference_for(p, 20000);
        const Point x0 = initial_point(ps, p.dim);
        const ProblemConstants& c = p.constants;
        const double eta = algo.eta > 0.0 ? algo.eta : default_eta(p, algo.name);

        SweepRow row;
        row.gamma = gammas[gi];
        row.rho = c.rho();
        row.boundary = target == Target::distance ? 1.0 : 0.5;
        row.theory_factor = target == Target::distance
                                ? theory_distance_factor(algo.name, c.alpha, c.beta, c.gamma, c.L, eta)
                                : std::numeric_limits<double>::quiet_NaN();
        double floor = std::numeric_limits<double>::quiet_NaN();
        if (c.sigma_sq > 0.0 && (algo.name == "sg" || algo.name == "mba-linear")) {
            const double ahat = alpha_hat(c, target);
            if (ahat > 0.0) floor = target == Target::distance ? 2.0 * c.sigma_sq * eta / ahat : c.sigma_sq * eta;
        }

        RunContext ctx;
        ctx.reference = ref.get();
        ctx.target = target;
        std::vector<Trajectory> runs;
        std::int64_t converged = 0;
        bool any_diverged = false;
        for (std::uint64_t s : seeds) {
            Trajectory tr = run_algorithm(p, algo, x0, budget, s, ctx);
            auto metric = [&](const TrajectoryRow& r) { return target == Target::distance ? r.dist_sq : r.gap; };
            if (tr.diverged) {
                any_diverged = true;
            } else if (!tr.rows.empty()) {
                const double initial = metric(tr.rows.front());
                const std::size_t n = tr.rows.size();
                const std::size_t k = std::max<std::size_t>(1, n / 10);
                double tail = 0.0;
                for (std::size_t i = n - k; i < n; ++i) tail += metric(tr.rows[i]);
                tail /= static_cast<double>(k);
                double thresh = 1e-2 * initial;
                if (std::isfinite(floor)) thresh = std::max(thresh, 3.0 * floor);
                if (std::isfinite(tail) && (tail <= thresh || tail <= 1e-20)) ++converged;
            }
            runs.push_back(std::move(tr));
        }
        row.converged_fraction = static_cast<double>(converged) / static_cast<double>(seeds.size());
        FitOptions fo;
        fo.metric = target;
        fo.floor = floor;
        fo.theory = row.theory_factor;
        // Diverging runs stop early; fit on whatever was recorded.
        fo.min_points = 5;
        const RateFit fit = fit_rate(runs, fo);
        row.fitted_factor = fit.available ? fit.factor : std::numeric_limits<double>::quiet_NaN();
        if (any_diverged) row.verdict = RegimeVerdict::diverges;
        else if (row.converged_fraction >= 0.9) row.verdict = RegimeVerdict::converges;
        else row.verdict = RegimeVerdict::indeterminate;
        out[gi] = row;
    });
    return out;
}

}  // namespace ddopt
