#include "ddopt/equilibrium/equilibrium.hpp"

#include "ddopt/algorithms/conceptual.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace ddopt {

std::string to_string(EquilibriumCertificate::Method m) {
    return m == EquilibriumCertificate::Method::closed_form ? "closed-form" : "fixed-point";
}

namespace {

double op_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

EquilibriumCertificate closed_form_equilibrium(const DecisionProblem& p) {
    if (!is_gaussian_quadratic(p))
        throw UnsupportedOperation("closed_form_equilibrium: needs the gaussian-quadratic family");
    const Eigen::Index d = p.dim;
    const Matrix shift = p.dmap.kind() == DistributionMap::Kind::gaussian_location ? p.dmap.shift() : Matrix::Zero(d, d);
    const double norm = op_norm(shift);
    if (norm >= 1.0) {
        std::ostringstream os;
        os << "closed_form_equilibrium: ||shift||_op = " << norm << " >= 1";
        throw NoCertificate(os.str(), std::numeric_limits<double>::infinity());
    }
    EquilibriumCertificate cert;
    cert.method = EquilibriumCertificate::Method::closed_form;
    cert.tolerance = 1e-10;
    if (p.reg.kind() == Regularizer::Kind::zero) {
        cert.x_bar = (Matrix::Identity(d, d) - shift).partialPivLu().solve(p.dmap.m0());
        cert.iterations = 0;
    } else {
        Point x = Point::Zero(d);
        std::int64_t it = 0;
        for (; it < 1000000; ++it) {
            const Point next = repeated_minimization_step(p, x);
            const double step = (next - x).norm();
            x = next;
            if (step <= 1e-12 * (1.0 - norm) || step == 0.0) break;
        }
        cert.x_bar = x;
        cert.iterations = it + 1;
    }
    cert.residual = (cert.x_bar - repeated_minimization_step(p, cert.x_bar)).norm();
    if (!(cert.residual <= cert.tolerance)) {
        std::ostringstream os;
        os << "closed_form_equilibrium: residual " << cert.residual << " exceeds " << cert.tolerance;
        throw NoCertificate(os.str(), cert.residual);
    }
    return cert;
}

EquilibriumCertificate fixed_point_equilibrium(const DecisionProblem& p, const Point& x0, double tol,
                                               std::int64_t max_iter) {
    if (!(tol > 0.0)) throw ParameterError("fixed_point_equilibrium: tol must be > 0");
    if (max_iter < 1) throw ParameterError("fixed_point_equilibrium: max_iter must be >= 1");
    const double rho = p.constants.rho();
    Point x = x0;
    double best = std::numeric_limits<double>::infinity();
    if (!(rho < 1.0)) {
        const double r0 = (x - repeated_minimization_step(p, x)).norm();
        std::ostringstream os;
        os << "fixed_point_equilibrium: rho = " << rho << " >= 1, no contraction certificate";
        throw NoCertificate(os.str(), r0);
    }
    for (std::int64_t it = 1; it <= max_iter; ++it) {
        const Point next = repeated_minimization_step(p, x);
        const double step = (next - x).norm();
        if (!next.allFinite() || next.norm() > 1e12) {
            throw NoCertificate("fixed_point_equilibrium: iterates diverge", best);
        }
        best = std::min(best, step);
        x = next;
        if (step <= tol * (1.0 - rho)) {
            EquilibriumCertificate cert;
            cert.x_bar = x;
            cert.method = EquilibriumCertificate::Method::fixed_point;
            cert.iterations = it;
            cert.tolerance = tol;
            cert.residual = (x - repeated_minimization_step(p, x)).norm();
            return cert;
        }
    }
    std::ostringstream os;
    os << "fixed_point_equilibrium: no convergence in " << max_iter << " iterations";
    throw NoCertificate(os.str(), best);
}

std::pair<double, double> gap_estimate(const DecisionProblem& p, const EquilibriumCertificate& cert, const Point& x,
                                       std::int64_t n, std::uint64_t seed) {
    const Point& xb = cert.x_bar;
    const double dr = p.reg.value(x) - p.reg.value(xb);
    if (is_gaussian_quadratic(p)) return {expected_loss(p, xb, x) - expected_loss(p, xb, xb) + dr, 0.0};
    if (n < 2) throw ParameterError("gap_estimate: needs n >= 2");
    Matrix batch;
    p.dmap.sample_into(xb, n, seed, batch);
    double mean = 0.0;
    double m2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double diff = p.loss.value(x, batch.col(i)) - p.loss.value(xb, batch.col(i));
        const double delta = diff - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (diff - mean);
    }
    const double var = m2 / static_cast<double>(n - 1);
    return {mean + dr, std::sqrt(var / static_cast<double>(n))};
}

Reference make_reference(const DecisionProblem& p, const EquilibriumCertificate& cert, std::int64_t n,
                         std::uint64_t seed) {
    Reference ref;
    ref.x_bar = cert.x_bar;
    ref.gap = [p, cert, n, seed](const Point& x) { return gap_estimate(p, cert, x, n, seed); };
    return ref;
}

Reference make_reference(const DecisionProblem& p, const Point& x_bar, std::int64_t n, std::uint64_t seed) {
    EquilibriumCertificate cert;
    cert.x_bar = x_bar;
    cert.residual = std::numeric_limits<double>::quiet_NaN();
    return make_reference(p, cert, n, seed);
}

std::optional<Point> algebraic_fixed_point(const DecisionProblem& p) {
    if (!is_gaussian_quadratic(p) || p.reg.kind() != Regularizer::Kind::zero) return std::nullopt;
    const Eigen::Index d = p.dim;
    if (p.dmap.kind() != DistributionMap::Kind::gaussian_location) return p.dmap.m0();
    const Matrix a = Matrix::Identity(d, d) - p.dmap.shift();
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) return std::nullopt;
    return Point(lu.solve(p.dmap.m0()));
}

std::optional<Point> empirical_fixed_point(const DecisionProblem& p, const Point& x0, double tol, std::int64_t max_iter) {
    Point x = x0;
    for (std::int64_t it = 0; it < max_iter; ++it) {
        const Point next = repeated_minimization_step(p, x);
        if (!next.allFinite() || next.norm() > 1e12) return std::nullopt;
        const double step = (next - x).norm();
        x = next;
        if (step <= tol) return x;
    }
    return std::nullopt;
}

EquilibriumCertificate solve_equilibrium(const DecisionProblem& p) {
    if (is_gaussian_quadratic(p)) return closed_form_equilibrium(p);
    return fixed_point_equilibrium(p, Point::Zero(p.dim), 1e-10);
}

}  // namespace ddopt
