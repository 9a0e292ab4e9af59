#pragma once

#include "ddopt/core/types.hpp"

#include <optional>
#include <utility>

namespace ddopt {

// Per-sample loss l(x, z) with its certified (or declared) constants.
class Loss {
public:
    enum class Kind { quadratic, logistic_ridge };

    // l(x,z) = 1/2 ||x - z||^2
    static Loss quadratic();
    // l(x,z) = 1/2 (x - z)^T diag(w) (x - z); alpha = min w, L = beta = max w.
    static Loss weighted_quadratic(Eigen::VectorXd weights);
    // z = (a, b): log(1 + exp(-b <a,x>)) + (lambda/2)||x||^2.
    // feature_bound bounds ||a|| over the (responded) population; beta is user-declared.
    static Loss logistic_ridge(double lambda, double feature_bound, double beta);

    // 1 + R * x_bound / 4: Lipschitz bound of a -> grad in the features when ||x|| <= x_bound.
    static double logistic_beta_heuristic(double feature_bound, double x_bound);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double L() const { return L_; }
    double beta() const { return beta_; }
    std::optional<double> lower_bound() const { return 0.0; }
    double lambda() const { return lambda_; }
    double feature_bound() const { return feature_bound_; }
    // Diagonal weights for the quadratic kind; empty means unit weights.
    const Eigen::VectorXd& weights() const { return weights_; }
    Eigen::VectorXd weights_for(Eigen::Index d) const;

    // Dimension of a sample for decision dimension d.
    Eigen::Index sample_dim(Eigen::Index d) const { return kind_ == Kind::quadratic ? d : d + 1; }

    double value(const Point& x, const Sample& z) const;
    std::pair<double, Point> value_grad(const Point& x, const Sample& z) const;
    // Accumulates the gradient into g and returns the loss value; no allocation.
    double accumulate(const Point& x, const Eigen::Ref<const Eigen::VectorXd>& z, Point& g) const;

private:
    Kind kind_ = Kind::quadratic;
    double alpha_ = 1.0;
    double L_ = 1.0;
    double beta_ = 1.0;
    double lambda_ = 0.0;
    double feature_bound_ = 0.0;
    Eigen::VectorXd weights_;
};

std::pair<double, Point> loss_value_grad(const Loss& loss, const Point& x, const Sample& z);

}  // namespace ddopt
