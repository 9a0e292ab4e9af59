#pragma once

#include "ddopt/core/types.hpp"

#include <cstdint>
#include <vector>

namespace ddopt {

// Decision-dependent sampler D(x) with a Lipschitz constant gamma in W1.
class DistributionMap {
public:
    enum class Kind { gaussian_location, strategic_response, static_measure };

    // D(x) = N(m0 + shift * x, cov); gamma = ||shift||_op.
    static DistributionMap gaussian_location(Point m0, Matrix shift, Matrix cov);
    // Agents (a_i, b_i) respond with a' = a + gamma_u x; gamma = gamma_u.
    // features is n x d (one agent per row), labels in {-1, +1}.
    static DistributionMap strategic_response(Matrix features, Eigen::VectorXd labels, double gamma_u);
    // D(x) = N(m0, cov) for every x; gamma = 0.
    static DistributionMap static_gaussian(Point m0, Matrix cov);

    // Same map with an overridden (declared) Lipschitz constant.
    DistributionMap with_declared_gamma(double gamma) const;

    Kind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    Eigen::Index decision_dim() const { return decision_dim_; }
    Eigen::Index sample_dim() const { return sample_dim_; }

    const Point& m0() const { return m0_; }
    const Matrix& shift() const { return shift_; }
    const Matrix& cov() const { return cov_; }
    // Factor F with F F^T = cov.
    const Matrix& cov_factor() const { return factor_; }

    const Matrix& features() const { return features_; }
    const Eigen::VectorXd& labels() const { return labels_; }
    double gamma_u() const { return gamma_u_; }

    // Writes n draws from D(x) as columns of out (sample_dim x n). Draw i uses counter i under seed,
    // so equal seeds couple draws at different x.
    void sample_into(const Point& x, std::int64_t n, std::uint64_t seed, Matrix& out) const;

private:
    Kind kind_ = Kind::static_measure;
    double gamma_ = 0.0;
    Eigen::Index decision_dim_ = 0;
    Eigen::Index sample_dim_ = 0;
    Point m0_;
    Matrix shift_;
    Matrix cov_;
    Matrix factor_;
    Matrix features_;
    Eigen::VectorXd labels_;
    double gamma_u_ = 0.0;
};

std::vector<Sample> sample(const DistributionMap& dmap, const Point& x, std::int64_t n, std::uint64_t seed);

// Exact mean of D(x); gaussian-location and static maps only.
Point mean_map(const DistributionMap& dmap, const Point& x);

}  // namespace ddopt
