#include "ddopt/core/prox.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ddopt {

namespace {

constexpr double kDomainSlack = 1e-12;

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

}  // namespace

Regularizer Regularizer::zero() { return {Kind::zero, 0.0, 0.0}; }

Regularizer Regularizer::scaled_squared_norm(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw ParameterError("scaled-squared-norm: mu must be finite and >= 0");
    return {Kind::scaled_squared_norm, mu, 0.0};
}

Regularizer Regularizer::l1(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("l1: lambda must be finite and >= 0");
    return {Kind::l1, lambda, 0.0};
}

Regularizer Regularizer::box(double lo, double hi) {
    if (!(lo <= hi)) throw ParameterError("box: requires lo <= hi");
    return {Kind::box, lo, hi};
}

Regularizer Regularizer::ball(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("ball: radius must be finite and > 0");
    return {Kind::ball, radius, 0.0};
}

double Regularizer::value(const Point& x) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::scaled_squared_norm:
        return 0.5 * a_ * x.squaredNorm();
    case Kind::l1:
        return a_ * x.lpNorm<1>();
    case Kind::box:
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] < a_ - kDomainSlack || x[i] > b_ + kDomainSlack) return inf;
        }
        return 0.0;
    case Kind::ball:
        return x.norm() <= a_ * (1.0 + kDomainSlack) + kDomainSlack ? 0.0 : inf;
    }
    return 0.0;
}

Point Regularizer::prox(double eta, const Point& x) const {
    if (!(eta > 0.0)) throw ParameterError("prox: eta must be > 0");
    if (!x.allFinite()) throw ParameterError("prox: x must be finite");
    switch (kind_) {
    case Kind::zero:
        return x;
    case Kind::scaled_squared_norm:
        return x / (1.0 + eta * a_);
    case Kind::l1: {
        Point y(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = soft_threshold(x[i], eta * a_);
        return y;
    }
    case Kind::box:
        return x.cwiseMax(a_).cwiseMin(b_);
    case Kind::ball: {
        const double n = x.norm();
        return n <= a_ ? Point(x) : Point(x * (a_ / n));
    }
    }
    return x;
}

Point Regularizer::weighted_prox(const Eigen::VectorXd& w, const Point& v) const {
    if (w.size() != v.size()) throw ParameterError("weighted_prox: dimension mismatch");
    if (!(w.array() > 0.0).all()) throw ParameterError("weighted_prox: weights must be > 0");
    switch (kind_) {
    case Kind::zero:
        return v;
    case Kind::scaled_squared_norm:
        return (w.array() * v.array() / (w.array() + a_)).matrix();
    case Kind::l1: {
        Point y(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) y[i] = soft_threshold(v[i], a_ / w[i]);
        return y;
    }
    case Kind::box:
        return v.cwiseMax(a_).cwiseMin(b_);
    case Kind::ball: {
        const double n = v.norm();
        if (n <= a_) return v;
        if (w.maxCoeff() == w.minCoeff()) return v * (a_ / n);
        // y(s) = w/(w+s) * v, with ||y(s)|| decreasing in s; find ||y(s)|| = radius.
        auto y_of = [&](double s) { return Point((w.array() / (w.array() + s) * v.array()).matrix()); };
        double lo = 0.0;
        double hi = w.maxCoeff() * n / a_;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (y_of(mid).norm() > a_) lo = mid;
            else hi = mid;
        }
        return y_of(hi);
    }
    }
    return v;
}

std::string Regularizer::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::zero: os << "zero"; break;
    case Kind::scaled_squared_norm: os << "l2(" << a_ << ")"; break;
    case Kind::l1: os << "l1(" << a_ << ")"; break;
    case Kind::box: os << "box(" << a_ << "," << b_ << ")"; break;
    case Kind::ball: os << "ball(" << a_ << ")"; break;
    }
    return os.str();
}

Point prox(const Regularizer& reg, double eta, const Point& x) { return reg.prox(eta, x); }

}  // namespace ddopt
