#pragma once

#include "ddopt/core/types.hpp"

#include <string>

namespace ddopt {

// Convex closed regularizer r with a closed-form proximal map.
class Regularizer {
public:
    enum class Kind { zero, scaled_squared_norm, l1, box, ball };

    static Regularizer zero();
    // r(x) = (mu/2)||x||^2
    static Regularizer scaled_squared_norm(double mu);
    // r(x) = lambda ||x||_1
    static Regularizer l1(double lambda);
    // indicator of [lo, hi]^d
    static Regularizer box(double lo, double hi);
    // indicator of the Euclidean ball of the given radius
    static Regularizer ball(double radius);

    Kind kind() const { return kind_; }
    // Strong convexity modulus.
    double mu() const { return kind_ == Kind::scaled_squared_norm ? a_ : 0.0; }
    double lambda() const { return kind_ == Kind::l1 ? a_ : 0.0; }
    double lo() const { return a_; }
    double hi() const { return b_; }
    double radius() const { return a_; }
    bool bounded_domain() const { return kind_ == Kind::box || kind_ == Kind::ball; }

    // r(x); +inf outside the domain of an indicator (1e-12 slack).
    double value(const Point& x) const;

    // argmin_y r(y) + (1/2 eta)||y - x||^2
    Point prox(double eta, const Point& x) const;

    // argmin_y r(y) + (1/2) sum_i w_i (y_i - v_i)^2 for positive weights w.
    Point weighted_prox(const Eigen::VectorXd& w, const Point& v) const;

    std::string describe() const;

private:
    Regularizer(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
};

Point prox(const Regularizer& reg, double eta, const Point& x);

}  // namespace ddopt
