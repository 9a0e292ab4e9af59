#include "ddopt/problems/distribution.hpp"

#include "ddopt/core/rng.hpp"

#include <cmath>

namespace ddopt {

namespace {

Matrix psd_factor(const Matrix& cov) {
    if (cov.rows() != cov.cols()) throw ParameterError("covariance must be square");
    if (!cov.isApprox(cov.transpose(), 1e-12) && cov.norm() > 0.0)
        throw ParameterError("covariance must be symmetric");
    if (cov.isDiagonal(0.0)) {
        Matrix f = Matrix::Zero(cov.rows(), cov.cols());
        for (Eigen::Index i = 0; i < cov.rows(); ++i) {
            if (cov(i, i) < 0.0) throw ParameterError("covariance must be positive semidefinite");
            f(i, i) = std::sqrt(cov(i, i));
        }
        return f;
    }
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
        throw ParameterError("covariance must be positive semidefinite");
    return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

DistributionMap DistributionMap::gaussian_location(Point m0, Matrix shift, Matrix cov) {
    const Eigen::Index d = m0.size();
    if (d == 0) throw ParameterError("gaussian_location: empty base mean");
    if (shift.rows() != d || shift.cols() != d) throw ParameterError("gaussian_location: shift must be d x d");
    if (cov.rows() != d || cov.cols() != d) throw ParameterError("gaussian_location: covariance must be d x d");
    if (!m0.allFinite() || !shift.allFinite() || !cov.allFinite())
        throw ParameterError("gaussian_location: entries must be finite");
    DistributionMap m;
    m.kind_ = Kind::gaussian_location;
    m.decision_dim_ = d;
    m.sample_dim_ = d;
    m.factor_ = psd_factor(cov);
    m.gamma_ = operator_norm(shift);
    m.m0_ = std::move(m0);
    m.shift_ = std::move(shift);
    m.cov_ = std::move(cov);
    return m;
}

DistributionMap DistributionMap::strategic_response(Matrix features, Eigen::VectorXd labels, double gamma_u) {
    if (features.rows() == 0 || features.cols() == 0) throw ParameterError("strategic_response: empty population");
    if (labels.size() != features.rows()) throw ParameterError("strategic_response: one label per agent required");
    if (!(gamma_u >= 0.0)) throw ParameterError("strategic_response: gamma_u must be >= 0");
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1.0 && labels[i] != -1.0) throw ParameterError("strategic_response: labels must be +1 or -1");
    }
    DistributionMap m;
    m.kind_ = Kind::strategic_response;
    m.decision_dim_ = features.cols();
    m.sample_dim_ = features.cols() + 1;
    m.gamma_ = gamma_u;
    m.gamma_u_ = gamma_u;
    m.features_ = std::move(features);
    m.labels_ = std::move(labels);
    return m;
}

DistributionMap DistributionMap::static_gaussian(Point m0, Matrix cov) {
    const Eigen::Index d = m0.size();
    DistributionMap m = gaussian_location(std::move(m0), Matrix::Zero(d, d), std::move(cov));
    m.kind_ = Kind::static_measure;
    m.gamma_ = 0.0;
    return m;
}

DistributionMap DistributionMap::with_declared_gamma(double gamma) const {
    if (!(gamma >= 0.0)) throw ParameterError("declared gamma must be >= 0");
    DistributionMap m = *this;
    m.gamma_ = gamma;
    return m;
}

void DistributionMap::sample_into(const Point& x, std::int64_t n, std::uint64_t seed, Matrix& out) const {
    if (n < 1) throw ParameterError("sample: n must be >= 1");
    if (x.size() != decision_dim_) throw ParameterError("sample: dimension mismatch");
    out.resize(sample_dim_, n);
    const CounterRng rng(seed);
    if (kind_ == Kind::strategic_response) {
        const auto pop = static_cast<std::uint64_t>(features_.rows());
        for (std::int64_t i = 0; i < n; ++i) {
            const auto k = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(i), pop));
            out.col(i).head(decision_dim_) = features_.row(k).transpose() + gamma_u_ * x;
            out(decision_dim_, i) = labels_[k];
        }
        return;
    }
    const Point mean = kind_ == Kind::static_measure ? m0_ : Point(m0_ + shift_ * x);
    const Eigen::Index d = sample_dim_;
    Eigen::VectorXd xi(d);
    for (std::int64_t i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j)
            xi[j] = rng.normal(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j));
        if (d == 1) out(0, i) = mean[0] + factor_(0, 0) * xi[0];
        else out.col(i) = mean + factor_ * xi;
    }
}

std::vector<Sample> sample(const DistributionMap& dmap, const Point& x, std::int64_t n, std::uint64_t seed) {
    Matrix m;
    dmap.sample_into(x, n, seed, m);
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < m.cols(); ++i) out.emplace_back(m.col(i));
    return out;
}

Point mean_map(const DistributionMap& dmap, const Point& x) {
    if (x.size() != dmap.decision_dim()) throw ParameterError("mean_map: dimension mismatch");
    switch (dmap.kind()) {
    case DistributionMap::Kind::gaussian_location:
        return dmap.m0() + dmap.shift() * x;
    case DistributionMap::Kind::static_measure:
        return dmap.m0();
    case DistributionMap::Kind::strategic_response:
        break;
    }
    throw UnsupportedOperation("mean_map: strategic-response maps have no precomputed base mean");
}

}  // namespace ddopt
