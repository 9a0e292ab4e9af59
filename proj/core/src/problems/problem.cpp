#include "ddopt/problems/problem.hpp"

#include <cmath>

namespace ddopt {

std::string to_string(Model m) {
    switch (m) {
    case Model::full: return "full";
    case Model::linear: return "linear";
    case Model::clipped: return "clipped";
    }
    return "?";
}

ModelConstants ProblemConstants::model(Model m, std::int64_t batch) const {
    if (batch < 1) throw ParameterError("model constants: batch size must be >= 1");
    ModelConstants c;
    c.sigma0 = std::sqrt(sigma_sq / static_cast<double>(batch));
    switch (m) {
    case Model::full:
        c.alpha1 = alpha + mu;
        c.alpha2 = 0.0;
        break;
    case Model::linear:
        c.alpha1 = mu;
        c.alpha2 = alpha;
        break;
    case Model::clipped:
        c.alpha1 = mu;
        c.alpha2 = 0.0;
        break;
    }
    return c;
}

bool is_gaussian_quadratic(const DecisionProblem& p) {
    return p.loss.kind() == Loss::Kind::quadratic && p.dmap.kind() != DistributionMap::Kind::strategic_response;
}

double variance_estimate(const DecisionProblem& p, const Point& x, std::int64_t n, std::uint64_t seed) {
    Matrix batch;
    p.dmap.sample_into(x, n, seed, batch);
    Matrix grads(x.size(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Point g = Point::Zero(x.size());
        p.loss.accumulate(x, batch.col(i), g);
        grads.col(i) = g;
    }
    const Point mean = grads.rowwise().mean();
    return (grads.colwise() - mean).colwise().squaredNorm().sum() / static_cast<double>(n);
}

DecisionProblem make_problem(Loss loss, Regularizer reg, DistributionMap dmap, const Point& x0,
                             std::uint64_t seed) {
    DecisionProblem p;
    p.dim = dmap.decision_dim();
    if (x0.size() != p.dim) throw ParameterError("make_problem: x0 dimension does not match the distribution map");
    if (loss.sample_dim(p.dim) != dmap.sample_dim())
        throw ParameterError("make_problem: loss and distribution map disagree on the sample space");
    if (loss.kind() == Loss::Kind::quadratic) loss.weights_for(p.dim);
    p.loss = std::move(loss);
    p.reg = reg;
    p.dmap = std::move(dmap);
    p.constants.alpha = p.loss.alpha();
    p.constants.beta = p.loss.beta();
    p.constants.L = p.loss.L();
    p.constants.gamma = p.dmap.gamma();
    p.constants.mu = p.reg.mu();
    if (!(p.constants.alpha > 0.0)) throw ParameterError("make_problem: the loss must be strongly convex (alpha > 0)");
    if (is_gaussian_quadratic(p)) {
        const Eigen::VectorXd w = p.loss.weights_for(p.dim);
        p.constants.sigma_sq = (w.asDiagonal() * p.dmap.cov() * w.asDiagonal()).trace();
    } else {
        p.constants.sigma_sq = variance_estimate(p, x0, 10000, seed);
    }
    return p;
}

double expected_loss(const DecisionProblem& p, const Point& deployed, const Point& y) {
    if (!is_gaussian_quadratic(p)) throw UnsupportedOperation("expected_loss: closed form needs the gaussian-quadratic family");
    const Eigen::VectorXd w = p.loss.weights_for(p.dim);
    const Point r = y - mean_map(p.dmap, deployed);
    return 0.5 * (w.array() * r.array().square()).sum() + 0.5 * (w.asDiagonal() * p.dmap.cov()).trace();
}

Point expected_grad(const DecisionProblem& p, const Point& deployed, const Point& y) {
    if (!is_gaussian_quadratic(p)) throw UnsupportedOperation("expected_grad: closed form needs the gaussian-quadratic family");
    const Eigen::VectorXd w = p.loss.weights_for(p.dim);
    return (w.array() * (y - mean_map(p.dmap, deployed)).array()).matrix();
}

}  // namespace ddopt
