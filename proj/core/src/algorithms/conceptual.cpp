#include "ddopt/algorithms/conceptual.hpp"

#include "common.hpp"

#include <sstream>

namespace ddopt {

Point repeated_minimization_step(const DecisionProblem& p, const Point& x) {
    if (x.size() != p.dim) throw ParameterError("repeated_minimization_step: dimension mismatch");
    if (is_gaussian_quadratic(p)) return p.reg.weighted_prox(p.loss.weights_for(p.dim), mean_map(p.dmap, x));
    if (p.static_solver) return p.static_solver(x);
    throw UnsupportedOperation("repeated_minimization_step: no exact minimizer for problem " + p.name);
}

Point conceptual_prox_point_step(const DecisionProblem& p, const Point& x, double eta) {
    if (!(eta > 0.0)) throw ParameterError("conceptual_prox_point_step: eta must be > 0");
    if (!is_gaussian_quadratic(p)) throw UnsupportedOperation("conceptual_prox_point_step: needs the gaussian-quadratic family");
    const Eigen::VectorXd w = p.loss.weights_for(p.dim);
    const Point m = mean_map(p.dmap, x);
    const Eigen::VectorXd wt = w.array() + 1.0 / eta;
    const Point v = ((w.array() * m.array() + x.array() / eta) / wt.array()).matrix();
    return p.reg.weighted_prox(wt, v);
}

Point conceptual_prox_grad_step(const DecisionProblem& p, const Point& x, double eta) {
    if (!(eta > 0.0)) throw ParameterError("conceptual_prox_grad_step: eta must be > 0");
    if (eta > 1.0 / p.constants.L) {
        std::ostringstream os;
        os << "conceptual_prox_grad_step: eta = " << eta << " exceeds 1/L = " << 1.0 / p.constants.L;
        throw ParameterError(os.str());
    }
    if (!is_gaussian_quadratic(p)) throw UnsupportedOperation("conceptual_prox_grad_step: needs the gaussian-quadratic family");
    return p.reg.prox(eta, x - eta * expected_grad(p, x, x));
}

Trajectory conceptual_run(const DecisionProblem& p, const Point& x0, ConceptualMethod method, double eta,
                          std::int64_t T, const RunOptions& opts) {
    if (T < 0) throw ParameterError("conceptual_run: budget must be >= 0");
    Trajectory traj;
    switch (method) {
    case ConceptualMethod::repeated_minimization: traj.algo = "rm"; break;
    case ConceptualMethod::prox_point: traj.algo = "ppm"; break;
    case ConceptualMethod::prox_grad: traj.algo = "pgm"; break;
    }
    TrajectoryRow row;
    row.x = x0;
    if (detail::record(traj, row, opts, true)) return traj;
    Point x = x0;
    for (std::int64_t t = 1; t <= T; ++t) {
        TrajectoryRow next;
        next.query = x;
        switch (method) {
        case ConceptualMethod::repeated_minimization: x = repeated_minimization_step(p, x); break;
        case ConceptualMethod::prox_point: x = conceptual_prox_point_step(p, x, eta); break;
        case ConceptualMethod::prox_grad: x = conceptual_prox_grad_step(p, x, eta); break;
        }
        next.t = t;
        next.x = x;
        next.deployments = t;
        next.eta = method == ConceptualMethod::repeated_minimization ? 1.0 : eta;
        if (detail::record(traj, next, opts, t == T)) return traj;
    }
    traj.budget_exhausted = true;
    return traj;
}

}  // namespace ddopt
