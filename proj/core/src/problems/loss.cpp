#include "ddopt/problems/loss.hpp"

#include <cmath>

namespace ddopt {

namespace {

// log(1 + exp(s)) without overflow.
double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

double sigmoid(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

}  // namespace

Loss Loss::quadratic() { return Loss{}; }

Loss Loss::weighted_quadratic(Eigen::VectorXd weights) {
    if (weights.size() == 0 || !(weights.array() > 0.0).all() || !weights.allFinite())
        throw ParameterError("weighted_quadratic: weights must be finite and > 0");
    Loss l;
    l.alpha_ = weights.minCoeff();
    l.L_ = weights.maxCoeff();
    l.beta_ = l.L_;
    l.weights_ = std::move(weights);
    return l;
}

Loss Loss::logistic_ridge(double lambda, double feature_bound, double beta) {
    if (!(lambda >= 0.0)) throw ParameterError("logistic_ridge: lambda must be >= 0");
    if (!(feature_bound > 0.0)) throw ParameterError("logistic_ridge: feature bound must be > 0");
    if (!(beta > 0.0)) throw ParameterError("logistic_ridge: beta must be > 0");
    Loss l;
    l.kind_ = Kind::logistic_ridge;
    l.alpha_ = lambda;
    l.L_ = 0.25 * feature_bound * feature_bound + lambda;
    l.beta_ = beta;
    l.lambda_ = lambda;
    l.feature_bound_ = feature_bound;
    return l;
}

double Loss::logistic_beta_heuristic(double feature_bound, double x_bound) {
    return 1.0 + 0.25 * feature_bound * x_bound;
}

Eigen::VectorXd Loss::weights_for(Eigen::Index d) const {
    if (weights_.size() == 0) return Eigen::VectorXd::Ones(d);
    if (weights_.size() != d) throw ParameterError("quadratic loss: weight dimension mismatch");
    return weights_;
}

double Loss::accumulate(const Point& x, const Eigen::Ref<const Eigen::VectorXd>& z, Point& g) const {
    const Eigen::Index d = x.size();
    if (z.size() != sample_dim(d) || g.size() != d) throw ParameterError("loss: dimension mismatch");
    if (kind_ == Kind::quadratic) {
        if (weights_.size() == 0) {
            double v = 0.0;
            for (Eigen::Index i = 0; i < d; ++i) {
                const double r = x[i] - z[i];
                g[i] += r;
                v += r * r;
            }
            return 0.5 * v;
        }
        if (weights_.size() != d) throw ParameterError("quadratic loss: weight dimension mismatch");
        double v = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double r = x[i] - z[i];
            g[i] += weights_[i] * r;
            v += weights_[i] * r * r;
        }
        return 0.5 * v;
    }
    const double b = z[d];
    const double s = -b * z.head(d).dot(x);
    const double coef = -b * sigmoid(s);
    g += coef * z.head(d) + lambda_ * x;
    return softplus(s) + 0.5 * lambda_ * x.squaredNorm();
}

std::pair<double, Point> Loss::value_grad(const Point& x, const Sample& z) const {
    Point g = Point::Zero(x.size());
    const double v = accumulate(x, z, g);
    return {v, std::move(g)};
}

double Loss::value(const Point& x, const Sample& z) const { return value_grad(x, z).first; }

std::pair<double, Point> loss_value_grad(const Loss& loss, const Point& x, const Sample& z) {
    return loss.value_grad(x, z);
}

}  // namespace ddopt
