#include "ddopt/problems/distribution.hpp"
#include "ddopt/problems/instances.hpp"
#include "ddopt/problems/loss.hpp"
#include "ddopt/problems/problem.hpp"
#include "ddopt/problems/sensitivity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace ddopt;

namespace {

Point vec(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p(i++) = x;
    return p;
}

DistributionMap gauss1d(double m0, double shift, double sigma) {
    return DistributionMap::gaussian_location(vec({m0}), Matrix::Constant(1, 1, shift), Matrix::Constant(1, 1, sigma * sigma));
}

}  // namespace

TEST(Distribution, PointMassSamples) {
    const auto s = sample(gauss1d(1.0, 0.5, 0.0), vec({2.0}), 3, 99);
    ASSERT_EQ(s.size(), 3u);
    for (const auto& z : s) EXPECT_DOUBLE_EQ(z(0), 2.0);
}

TEST(Distribution, StrategicResponse) {
    Matrix a(1, 2);
    a << 1.0, 0.0;
    const auto dmap = DistributionMap::strategic_response(a, Eigen::VectorXd::Constant(1, 1.0), 0.3);
    EXPECT_DOUBLE_EQ(dmap.gamma(), 0.3);
    const auto s = sample(dmap, vec({2.0, 2.0}), 1, 1);
    ASSERT_EQ(s.front().size(), 3);
    EXPECT_NEAR(s.front()(0), 1.6, 1e-15);
    EXPECT_NEAR(s.front()(1), 0.6, 1e-15);
    EXPECT_EQ(s.front()(2), 1.0);
}

TEST(Distribution, StaticIgnoresDecision) {
    const auto dmap = DistributionMap::static_gaussian(vec({0.5, -1.0}), Matrix::Identity(2, 2));
    const auto a = sample(dmap, vec({0.0, 0.0}), 5, 17);
    const auto b = sample(dmap, vec({10.0, -3.0}), 5, 17);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Distribution, SamplesAreDeterministic) {
    const auto dmap = gauss1d(1.0, 0.5, 2.0);
    EXPECT_EQ(sample(dmap, vec({0.3}), 10, 5), sample(dmap, vec({0.3}), 10, 5));
    EXPECT_NE(sample(dmap, vec({0.3}), 10, 5), sample(dmap, vec({0.3}), 10, 6));
}

TEST(Distribution, CommonRandomNumbersShiftDraws) {
    const auto dmap = gauss1d(1.0, 0.5, 2.0);
    const auto a = sample(dmap, vec({0.0}), 20, 8);
    const auto b = sample(dmap, vec({2.0}), 20, 8);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i](0) - a[i](0), 1.0, 1e-14);
}

TEST(Distribution, MeanMap) {
    const auto dmap = DistributionMap::gaussian_location(vec({1.0, 1.0}), 0.5 * Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    EXPECT_EQ(mean_map(dmap, vec({2.0, 0.0})), vec({2.0, 1.0}));
    const auto stat = DistributionMap::static_gaussian(vec({3.0}), Matrix::Identity(1, 1));
    EXPECT_EQ(mean_map(stat, vec({7.0})), vec({3.0}));
    EXPECT_EQ(mean_map(gauss1d(4.0, 0.0, 1.0), vec({-9.0})), vec({4.0}));
}

TEST(Distribution, MeanMapUnsupportedForStrategic) {
    const auto dmap = DistributionMap::strategic_response(Matrix::Ones(2, 2), Eigen::VectorXd::Ones(2), 0.1);
    EXPECT_THROW(mean_map(dmap, vec({0.0, 0.0})), UnsupportedOperation);
}

TEST(Loss, QuadraticValueGrad) {
    const auto [v, g] = loss_value_grad(Loss::quadratic(), vec({3.0}), vec({1.0}));
    EXPECT_DOUBLE_EQ(v, 2.0);
    EXPECT_DOUBLE_EQ(g(0), 2.0);
    const auto [v0, g0] = loss_value_grad(Loss::quadratic(), vec({1.5, -2.0}), vec({1.5, -2.0}));
    EXPECT_EQ(v0, 0.0);
    EXPECT_EQ(g0.norm(), 0.0);
}

TEST(Loss, LogisticAtOrigin) {
    const Loss l = Loss::logistic_ridge(0.0, 2.0, 1.0);
    const Sample z = vec({0.4, -1.2, -1.0});
    const auto [v, g] = loss_value_grad(l, vec({0.0, 0.0}), z);
    EXPECT_NEAR(v, std::log(2.0), 1e-15);
    EXPECT_NEAR(g(0), 0.4 / 2.0, 1e-15);
    EXPECT_NEAR(g(1), -1.2 / 2.0, 1e-15);
}

TEST(Loss, LogisticGradientMatchesFiniteDifference) {
    const Loss l = Loss::logistic_ridge(0.3, 2.0, 1.0);
    const Sample z = vec({0.7, -0.2, 1.0});
    const Point x = vec({0.5, 1.5});
    const auto [v, g] = loss_value_grad(l, x, z);
    for (int i = 0; i < 2; ++i) {
        Point e = Point::Zero(2);
        e(i) = 1e-6;
        const double fd = (l.value(x + e, z) - l.value(x - e, z)) / 2e-6;
        EXPECT_NEAR(g(i), fd, 1e-8);
    }
    (void)v;
}

TEST(Loss, WeightedQuadraticConstants) {
    const Loss l = Loss::weighted_quadratic(vec({1.0, 4.0}));
    EXPECT_EQ(l.alpha(), 1.0);
    EXPECT_EQ(l.L(), 4.0);
    EXPECT_NEAR(l.value(vec({1.0, 1.0}), vec({0.0, 0.0})), 2.5, 1e-15);
}

TEST(Problem, Quad1dConstants) {
    const auto p = quad1d(0.5, 1.0);
    EXPECT_EQ(p.constants.alpha, 1.0);
    EXPECT_EQ(p.constants.beta, 1.0);
    EXPECT_EQ(p.constants.L, 1.0);
    EXPECT_DOUBLE_EQ(p.constants.gamma, 0.5);
    EXPECT_DOUBLE_EQ(p.constants.sigma_sq, 1.0);
    EXPECT_DOUBLE_EQ(p.constants.rho(), 0.5);
    EXPECT_TRUE(is_gaussian_quadratic(p));
}

TEST(Problem, QuadNdCondition) {
    const auto p = quadNd(3, 0.1, 100.0, 0.0);
    EXPECT_DOUBLE_EQ(p.constants.kappa(), 100.0);
    EXPECT_DOUBLE_EQ(p.constants.beta, 100.0);
    EXPECT_EQ(p.dim, 3);
}

TEST(Problem, ExpectedLossClosedForm) {
    const auto p = quad1d(0.5, 2.0);
    // E 1/2 (y - z)^2 with z ~ N(1 + 0.5 x, 4)
    EXPECT_NEAR(expected_loss(p, vec({2.0}), vec({3.0})), 0.5 * (3.0 - 2.0) * (3.0 - 2.0) + 2.0, 1e-14);
    EXPECT_NEAR(expected_grad(p, vec({2.0}), vec({3.0}))(0), 1.0, 1e-14);
}

TEST(Problem, VarianceEstimateMatchesSigma) {
    const auto p = quad1d(0.5, 1.5);
    EXPECT_NEAR(variance_estimate(p, vec({0.3}), 200000, 3), 2.25, 0.05);
}

TEST(Problem, StrategicLogisticBuilds) {
    const auto p = strategic_logistic(50, 0.2, 0.5);
    EXPECT_EQ(p.dim, 2);
    EXPECT_DOUBLE_EQ(p.constants.gamma, 0.2);
    EXPECT_DOUBLE_EQ(p.constants.alpha, 0.5);
    EXPECT_TRUE(static_cast<bool>(p.static_solver));
    EXPECT_FALSE(is_gaussian_quadratic(p));
    EXPECT_THROW(strategic_logistic(50, 0.2, 0.0), ParameterError);
}

TEST(Problem, PopulationCsvRoundTrip) {
    const std::string path = ::testing::TempDir() + "pop.csv";
    {
        std::ofstream os(path);
        os << "a_1,a_2,b\n0.5,1.0,1\n-1.0,2.0,-1\n";
    }
    const Population pop = load_population_csv(path);
    ASSERT_EQ(pop.features.rows(), 2);
    EXPECT_EQ(pop.features(1, 1), 2.0);
    EXPECT_EQ(pop.labels(1), -1.0);
    std::remove(path.c_str());
}

TEST(Sensitivity, LipschitzReports) {
    const auto stat = DistributionMap::static_gaussian(vec({0.0}), Matrix::Identity(1, 1));
    const auto r0 = certify_lipschitz(stat, 10, 1);
    EXPECT_EQ(r0.max_ratio, 0.0);
    EXPECT_TRUE(r0.pass);

    const auto exact = certify_lipschitz(gauss1d(0.0, 0.7, 0.0), 10, 1);
    EXPECT_NEAR(exact.max_ratio, 0.7, 1e-12);
    EXPECT_TRUE(exact.pass);

    const auto under = certify_lipschitz(gauss1d(0.0, 0.7, 0.0).with_declared_gamma(0.5), 10, 1);
    EXPECT_FALSE(under.pass);
}

TEST(Sensitivity, DeviationCheckGaussianQuadratic) {
    const auto p = quad1d(0.6, 0.0);
    const auto rep = deviation_check(p, vec({1.0}), vec({-0.5}), 100, 3);
    EXPECT_NEAR(rep.grad_deviation, 0.6 * 1.5, 1e-12);
    EXPECT_NEAR(rep.grad_bound, 0.6 * 1.5, 1e-12);
    EXPECT_TRUE(rep.pass);

    const auto same = deviation_check(p, vec({1.0}), vec({1.0}), 100, 3);
    EXPECT_EQ(same.grad_deviation, 0.0);
    EXPECT_EQ(same.gap_deviation, 0.0);
}

TEST(Sensitivity, DeviationCheckStaticIsZero) {
    const auto p = quad1d(0.0, 1.0);
    const auto rep = deviation_check(p, vec({1.0}), vec({-2.0}), 2000, 3);
    EXPECT_LE(rep.grad_deviation, 3.0 * rep.grad_se + 1e-12);
    EXPECT_TRUE(rep.pass);
}

TEST(Sensitivity, AnalyticGradientDeviationEquality) {
    // ||grad f_x(w) - grad f_y(w)|| = beta * |gamma (x - y)| exactly on the gaussian-quadratic family.
    for (double gamma : {0.1, 0.5, 0.9}) {
        const auto p = quad1d(gamma, 1.0);
        for (double w : {-2.0, 0.0, 3.0}) {
            const double dev = (expected_grad(p, vec({1.0}), vec({w})) - expected_grad(p, vec({-0.4}), vec({w}))).norm();
            EXPECT_NEAR(dev, gamma * 1.4, 1e-12);
        }
    }
}

TEST(Sensitivity, RelativeBiasEquality) {
    const auto p = quad1d(0.35, 1.0);
    const Point xb = vec({1.0 / 0.65});
    for (double x : {-3.0, 0.0, 0.5, 4.0}) {
        const Point xp = vec({x});
        const double lhs = (expected_grad(p, xp, xp) - expected_grad(p, xb, xp)).norm();
        const double rhs = p.constants.rho() * expected_grad(p, xb, xp).norm();
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
}
