#include "ddopt/problems/sensitivity.hpp"

#include "ddopt/core/rng.hpp"
#include "ddopt/core/wasserstein.hpp"

#include <algorithm>
#include <cmath>

namespace ddopt {

LipschitzReport certify_lipschitz(const DistributionMap& dmap, std::int64_t trials, std::uint64_t seed,
                                  std::int64_t samples_per_point) {
    if (trials < 1) throw ParameterError("certify_lipschitz: trials must be >= 1");
    LipschitzReport rep;
    rep.declared_gamma = dmap.gamma();
    rep.projection_ratios.assign(static_cast<std::size_t>(dmap.sample_dim()), 0.0);
    const Eigen::Index d = dmap.decision_dim();
    const CounterRng rng(derive_seed(seed, 0x11));
    std::uint64_t k = 0;
    Matrix sx;
    Matrix sy;
    std::vector<double> a(static_cast<std::size_t>(samples_per_point));
    std::vector<double> b(a.size());
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Point x(d);
        Point y(d);
        for (Eigen::Index j = 0; j < d; ++j) x[j] = 2.0 * rng.normal(k++);
        for (Eigen::Index j = 0; j < d; ++j) y[j] = 2.0 * rng.normal(k++);
        const double dist = (x - y).norm();
        if (dist == 0.0) continue;
        const std::uint64_t s = derive_seed(seed, 0x22, static_cast<std::uint64_t>(trial));
        dmap.sample_into(x, samples_per_point, s, sx);
        dmap.sample_into(y, samples_per_point, s, sy);
        for (Eigen::Index j = 0; j < dmap.sample_dim(); ++j) {
            for (Eigen::Index i = 0; i < samples_per_point; ++i) {
                a[static_cast<std::size_t>(i)] = sx(j, i);
                b[static_cast<std::size_t>(i)] = sy(j, i);
            }
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            const double ratio = w1_empirical_1d(a, b) / dist;
            auto& slot = rep.projection_ratios[static_cast<std::size_t>(j)];
            slot = std::max(slot, ratio);
            rep.max_ratio = std::max(rep.max_ratio, ratio);
        }
    }
    rep.pass = rep.max_ratio <= rep.declared_gamma * (1.0 + rep.slack);
    return rep;
}

DeviationReport deviation_check(const DecisionProblem& p, const Point& x, const Point& y, std::int64_t n,
                                std::uint64_t seed, std::optional<Point> u, std::optional<Point> v) {
    if (n < 2) throw ParameterError("deviation_check: n must be >= 2");
    const Eigen::Index d = p.dim;
    if (x.size() != d || y.size() != d) throw ParameterError("deviation_check: dimension mismatch");
    const Point uu = u.value_or(x);
    const Point vv = v.value_or(y);
    DeviationReport rep;
    const double gb = p.constants.gamma * p.constants.beta;
    rep.grad_bound = gb * (x - y).norm();
    rep.gap_bound = gb * (x - y).norm() * (uu - vv).norm();

    Matrix zx;
    Matrix zy;
    p.dmap.sample_into(x, n, seed, zx);
    p.dmap.sample_into(y, n, seed, zy);
    const double nn = static_cast<double>(n);

    Point dir = y - x;
    if (dir.norm() == 0.0) dir = Point::Unit(d, 0);
    Matrix diffs(d, n);
    for (int k = 0; k < 10; ++k) {
        const double s = -1.0 + 3.0 * k / 9.0;
        const Point w = x + s * dir;
        for (Eigen::Index i = 0; i < n; ++i) {
            Point g = Point::Zero(d);
            p.loss.accumulate(w, zx.col(i), g);
            Point h = Point::Zero(d);
            p.loss.accumulate(w, zy.col(i), h);
            diffs.col(i) = g - h;
        }
        const Point mean = diffs.rowwise().mean();
        const double var = (diffs.colwise() - mean).rowwise().squaredNorm().sum() / (nn - 1.0);
        const double dev = mean.norm();
        const double se = std::sqrt(var / nn);
        rep.grid_deviation.push_back(dev);
        rep.grid_se.push_back(se);
        if (dev >= rep.grad_deviation) {
            rep.grad_deviation = dev;
            rep.grad_se = se;
        }
    }
    rep.grad_pass = true;
    for (std::size_t k = 0; k < rep.grid_deviation.size(); ++k) {
        if (rep.grid_deviation[k] > rep.grad_bound * (1.0 + 1e-12) + 3.0 * rep.grid_se[k]) rep.grad_pass = false;
    }

    Eigen::VectorXd gaps(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double fx = p.loss.value(uu, zx.col(i)) - p.loss.value(vv, zx.col(i));
        const double fy = p.loss.value(uu, zy.col(i)) - p.loss.value(vv, zy.col(i));
        gaps[i] = fx - fy;
    }
    const double gmean = gaps.mean();
    rep.gap_deviation = std::abs(gmean);
    rep.gap_se = std::sqrt((gaps.array() - gmean).square().sum() / (nn - 1.0) / nn);
    rep.gap_pass = rep.gap_deviation <= rep.gap_bound * (1.0 + 1e-12) + 3.0 * rep.gap_se;
    rep.pass = rep.grad_pass && rep.gap_pass;
    return rep;
}

}  // namespace ddopt
