#include "ddopt/algorithms/conceptual.hpp"
#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/online.hpp"
#include "ddopt/algorithms/stagewise.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/problems/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ddopt;

namespace {

Point vec(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p(i++) = x;
    return p;
}

Point scalar(double x) { return Point::Constant(1, x); }

Reference ref_for(const DecisionProblem& p) { return make_reference(p, closed_form_equilibrium(p)); }

RunOptions opts_with(const Reference& ref) {
    RunOptions o;
    o.reference = &ref;
    return o;
}

void expect_same(const Trajectory& a, const Trajectory& b) {
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].x, b.rows[i].x) << "row " << i;
        EXPECT_EQ(a.rows[i].samples, b.rows[i].samples);
        EXPECT_EQ(a.rows[i].deployments, b.rows[i].deployments);
    }
}

}  // namespace

TEST(Conceptual, RepeatedMinimizationExamples) {
    const auto p = quad1d(0.5, 0.0);
    EXPECT_DOUBLE_EQ(repeated_minimization_step(p, scalar(0.0))(0), 1.0);
    EXPECT_DOUBLE_EQ(repeated_minimization_step(p, scalar(2.0))(0), 2.0);
    const auto s = quad1d(0.0, 0.0, 3.0);
    EXPECT_DOUBLE_EQ(repeated_minimization_step(s, scalar(-7.0))(0), 3.0);
    EXPECT_DOUBLE_EQ(repeated_minimization_step(s, scalar(11.0))(0), 3.0);
}

TEST(Conceptual, ProxPointExamples) {
    const auto p = quad1d(0.5, 0.0);
    EXPECT_DOUBLE_EQ(conceptual_prox_point_step(p, scalar(0.0), 1.0)(0), 0.5);
    EXPECT_NEAR(conceptual_prox_point_step(p, scalar(0.7), 1e12)(0), repeated_minimization_step(p, scalar(0.7))(0), 1e-10);
    const Point xb = scalar(2.0);
    for (double eta : {0.25, 1.0, 4.0}) {
        const double x = -1.0;
        const double xp = conceptual_prox_point_step(p, scalar(x), eta)(0);
        EXPECT_NEAR(std::abs(xp - xb(0)) / std::abs(x - xb(0)), (1 + 0.5 * eta) / (1 + eta), 1e-12);
    }
}

TEST(Conceptual, ProxGradExamples) {
    const auto p = quad1d(0.3, 0.0);
    EXPECT_NEAR(conceptual_prox_grad_step(p, scalar(2.0), 1.0)(0), 1.0 + 0.3 * 2.0, 1e-15);
    const double xb = 1.0 / 0.7;
    EXPECT_NEAR(conceptual_prox_grad_step(p, scalar(xb), 0.5)(0), xb, 1e-14);
    const double x = -2.0;
    EXPECT_NEAR(std::abs(conceptual_prox_grad_step(p, scalar(x), 1.0)(0) - xb) / std::abs(x - xb), 0.3, 1e-12);
    const auto s = quad1d(0.0, 0.0, 2.5);
    EXPECT_DOUBLE_EQ(conceptual_prox_grad_step(s, scalar(9.0), 1.0)(0), 2.5);
    EXPECT_THROW(conceptual_prox_grad_step(p, scalar(0.0), 1.5), ParameterError);
}

TEST(Conceptual, RunCountsDeployments) {
    const auto p = quad1d(0.5, 0.0);
    const auto ref = ref_for(p);
    const auto tr = conceptual_run(p, scalar(0.0), ConceptualMethod::repeated_minimization, 1.0, 10, opts_with(ref));
    ASSERT_EQ(tr.rows.size(), 11u);
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
        EXPECT_EQ(tr.rows[i].deployments, static_cast<std::int64_t>(i));
        EXPECT_EQ(tr.rows[i].samples, 0);
    }
    EXPECT_NEAR(tr.rows[1].dist_sq / tr.rows[0].dist_sq, 0.25, 1e-12);
}

TEST(Conceptual, DivergesAboveBoundary) {
    const auto p = quad1d(1.2, 0.0);
    const auto tr = conceptual_run(p, scalar(0.0), ConceptualMethod::repeated_minimization, 1.0, 200);
    EXPECT_TRUE(tr.diverged);
    EXPECT_LT(tr.last().t, 200);
}

TEST(Stochastic, DeterministicSgRecursion) {
    const auto p = quad1d(0.5, 0.0);
    const auto tr = sg_run(p, scalar(0.0), StepSchedule::constant(0.5), 30, 1);
    double x = 0.0;
    for (std::size_t t = 1; t < tr.rows.size(); ++t) {
        x = 0.75 * x + 0.5;
        EXPECT_NEAR(tr.rows[t].x(0), x, 1e-14);
        EXPECT_NEAR(std::abs(tr.rows[t].x(0) - 2.0) / std::abs(tr.rows[t - 1].x(0) - 2.0), 0.75, 1e-12);
    }
}

TEST(Stochastic, StaticOneStep) {
    const auto p = quad1d(0.0, 0.0, 1.7);
    const auto tr = sg_run(p, scalar(-4.0), StepSchedule::constant(1.0), 1, 1);
    EXPECT_DOUBLE_EQ(tr.last().x(0), 1.7);
}

TEST(Stochastic, GreedyAccounting) {
    const auto p = quad1d(0.5, 1.0);
    RunOptions o;
    o.batch = 3;
    const auto tr = sg_run(p, scalar(0.0), StepSchedule::constant(0.1), 50, 2, o);
    for (const auto& r : tr.rows) {
        EXPECT_EQ(r.deployments, r.t);
        EXPECT_EQ(r.samples, 3 * r.t);
    }
}

TEST(Stochastic, SameSeedSameTrajectory) {
    const auto p = quad1d(0.5, 1.0);
    expect_same(sg_run(p, scalar(0.0), StepSchedule::constant(0.1), 100, 9),
                sg_run(p, scalar(0.0), StepSchedule::constant(0.1), 100, 9));
}

TEST(Stochastic, NoiseBallBound) {
    // E|x_T - xb|^2 <= (1 - 2 eta ahat/3)^T |x0 - xb|^2 + 2 sigma^2 eta / ahat
    const auto p = quad1d(0.5, 1.0);
    const auto ref = ref_for(p);
    const double eta = 0.05;
    const std::int64_t T = 400;
    double mean = 0.0;
    for (std::uint64_t s = 1; s <= 200; ++s) mean += sg_run(p, scalar(0.0), StepSchedule::constant(eta), T, s, opts_with(ref)).last().dist_sq;
    mean /= 200;
    const double ahat = 0.5;
    const double bound = std::pow(1 - 2 * eta * ahat / 3, T) * 4.0 + 2 * eta / ahat;
    EXPECT_LE(mean, bound);
}

TEST(Stochastic, AsgConstantParameterLock) {
    const auto p = quadNd(2, 0.0, 4.0, 0.5);
    const auto tr = asg_run(p, vec({0.0, 0.0}), AsgOptions{}, 100, 3);
    ASSERT_EQ(tr.asg_delta.size(), 100u);
    const double ahat = p.constants.alpha;
    const double eta = 1.0 / (4 * p.constants.L);
    const double beta = (1 - std::sqrt(eta * ahat)) / (1 + std::sqrt(eta * ahat));
    for (std::size_t i = 0; i < tr.asg_delta.size(); ++i) {
        EXPECT_NEAR(tr.asg_delta[i], std::sqrt(eta * ahat), 1e-12);
        EXPECT_NEAR(tr.asg_beta[i], beta, 1e-12);
        EXPECT_NEAR(tr.asg_gamma[i], ahat, 1e-12);
    }
}

TEST(Stochastic, AsgNextDeltaSolvesQuadratic) {
    for (double g : {0.1, 1.0, 3.0}) {
        const double eta = 0.2;
        const double ahat = 0.8;
        const double d = asg_next_delta(eta, g, ahat);
        EXPECT_NEAR(d * d - eta * (ahat - g) * d - eta * g, 0.0, 1e-14);
        EXPECT_GT(d, 0.0);
    }
}

TEST(Stochastic, AsgStaticRate) {
    const auto p = quadNd(2, 0.0, 1.0, 0.0);
    const auto ref = ref_for(p);
    RunOptions o = opts_with(ref);
    const auto tr = asg_run(p, vec({-3.0, 5.0}), AsgOptions{}, 60, 1, o);
    const double q = 1 - std::sqrt(p.constants.alpha / (4 * p.constants.L));
    const double gap0 = tr.rows.front().gap;
    for (const auto& r : tr.rows) EXPECT_LE(r.gap, 2 * std::pow(q, static_cast<double>(r.t)) * gap0 + 1e-15);
}

TEST(Stochastic, AsgStaysAtEquilibrium) {
    const auto p = quad1d(0.001, 0.0);
    const Point xb = closed_form_equilibrium(p).x_bar;
    const auto tr = asg_run(p, xb, AsgOptions{}, 50, 1);
    for (const auto& r : tr.rows) EXPECT_NEAR(r.x(0), xb(0), 1e-13);
}

TEST(ModelBased, LinearMatchesSgBitwise) {
    const auto p = quad1d(0.5, 1.0, 1.0, Regularizer::l1(0.1));
    const auto a = mba_run(p, scalar(0.3), ModelKind{Model::linear, 1}, StepSchedule::constant(0.2), 200, 11);
    const auto b = sg_run(p, scalar(0.3), StepSchedule::constant(0.2), 200, 11);
    expect_same(a, b);
}

TEST(ModelBased, FullModelClosedForm) {
    const auto p = quad1d(0.5, 1.0);
    Matrix z(1, 1);
    z(0, 0) = 2.5;
    const double x = -1.0;
    const double eta = 0.4;
    EXPECT_NEAR(model_step(p, Model::full, scalar(x), z, eta)(0), (x + eta * 2.5) / (1 + eta), 1e-15);
}

TEST(ModelBased, ClippedClosedForm) {
    const auto p = quad1d(0.5, 1.0);
    Matrix z(1, 1);
    z(0, 0) = 3.0;
    const double x = 1.0;
    const double g = x - 3.0;
    const double loss = 0.5 * g * g;
    for (double eta : {0.2, 0.5, 0.9, 3.0}) {
        const double expect = x - std::min(eta, loss / (g * g)) * g;
        EXPECT_NEAR(model_step(p, Model::clipped, scalar(x), z, eta)(0), expect, 1e-12);
    }
    z(0, 0) = x;
    EXPECT_EQ(model_step(p, Model::clipped, scalar(x), z, 0.7)(0), x);
}

TEST(ModelBased, StepMinimizesSubproblem) {
    const auto p = quad1d(0.2, 1.0, 1.0, Regularizer::box(-1.0, 0.8));
    Matrix z(1, 3);
    z << 2.0, -0.5, 1.2;
    for (Model m : {Model::full, Model::linear, Model::clipped}) {
        const Point x = scalar(0.1);
        const Point y = model_step(p, m, x, z, 0.6);
        const double best = model_subproblem_value(p, m, x, z, 0.6, y);
        for (double d = -0.05; d <= 0.05; d += 0.001) {
            const Point yy = scalar(std::clamp(y(0) + d, -1.0, 0.8));
            EXPECT_LE(best, model_subproblem_value(p, m, x, z, 0.6, yy) + 1e-12) << to_string(m);
        }
    }
}

TEST(ModelBased, UnsupportedPairs) {
    const auto p = strategic_logistic(20, 0.1, 0.5);
    DecisionProblem q = p;
    q.full_model_solver = nullptr;
    EXPECT_THROW(check_model_support(q, ModelKind{Model::full, 1}), UnsupportedOperation);
    EXPECT_NO_THROW(check_model_support(q, ModelKind{Model::linear, 1}));
    EXPECT_THROW(check_model_support(quad1d(0.1, 1.0), ModelKind{Model::linear, 0}), ParameterError);
}

TEST(Online, ConstantStepMatchesSg) {
    const auto p = quad1d(0.3, 1.0);
    const auto a = online_avg_run(p, scalar(0.0), OnlineMethod::prox_grad, StepSchedule::constant(0.1), 100, 4);
    const auto b = sg_run(p, scalar(0.0), StepSchedule::constant(0.1), 100, 4);
    expect_same(a, b);
}

TEST(Online, AverageIsUniformMeanOfPlayedPoints) {
    const auto p = quad1d(0.3, 1.0);
    const auto tr = online_avg_run(p, scalar(0.0), OnlineMethod::prox_grad, StepSchedule::inverse_time(1.0), 50, 4);
    double sum = 0.0;
    for (std::size_t t = 1; t < tr.rows.size(); ++t) {
        sum += tr.rows[t - 1].x(0);
        EXPECT_NEAR(tr.rows[t].x_avg(0), sum / static_cast<double>(t), 1e-12);
    }
    EXPECT_GT(tr.max_grad_norm, 0.0);
}

TEST(Online, DualAveragingConstrainedStatic) {
    // Static minimizer m0 = 3 outside the ball of radius 1: the constrained solution is 1.
    const auto p = quad1d(0.0, 0.0, 3.0, Regularizer::ball(1.0));
    const auto tr = online_avg_run(p, scalar(0.0), OnlineMethod::dual_averaging, StepSchedule::linear_growth(1.0), 2000, 1);
    EXPECT_NEAR(tr.last().x_avg(0), 1.0, 1e-2);
    EXPECT_NEAR(tr.last().x(0), 1.0, 1e-12);
    EXPECT_THROW(online_avg_run(quad1d(0.0, 0.0), scalar(0.0), OnlineMethod::dual_averaging, StepSchedule::constant(1.0), 5, 1),
                 ParameterError);
}

TEST(Stagewise, InnerCountExample) {
    // a1 + a2 = 1, gb = 0, eta = 0.5: ceil((1 + 1/(2 * 0.5)) log 2) = 2
    const ModelConstants one{0.5, 0.5, 0.0};
    EXPECT_EQ(stagewise_inner_count(StageVersion::I, one, 0.0, 0.5), 2);
    // a1 = a2 = 1: ceil((1 + 1/(4 * 0.5)) log 2) = ceil(1.04) = 2
    EXPECT_EQ(stagewise_inner_count(StageVersion::I, ModelConstants{1.0, 1.0, 0.0}, 0.0, 0.5), 2);
    // version II, a1 + a2 = 1, gb = 0.5, eta = 0.25: ceil((1 + 1/(0.5 * 0.25)) log(2/0.5)) = ceil(9 log 4) = 13
    EXPECT_EQ(stagewise_inner_count(StageVersion::II, one, 0.5, 0.25), 13);
    EXPECT_THROW(stagewise_inner_count(StageVersion::II, one, 1.0, 0.5), ParameterError);
}

TEST(Stagewise, VersionIOuterContraction) {
    const auto p = quad1d(0.5, 0.0);
    const auto ref = ref_for(p);
    const auto m = p.constants.model(Model::linear, 1);
    const double gb = p.constants.gamma * p.constants.beta;
    const double s = m.alpha1 + m.alpha2;
    const double factor = 0.5 * (1 + gb / (2 * s - gb));
    const double eta = stagewise_eta_cap(StageVersion::I, m, gb, p.constants.L);
    const auto tr = stagewise_mba_run(p, scalar(-2.0), ModelKind{Model::linear, 1}, StageVersion::I, eta, 8, 1, opts_with(ref));
    for (std::size_t t = 1; t < tr.rows.size(); ++t) {
        EXPECT_LE(tr.rows[t].dist_sq, factor * tr.rows[t - 1].dist_sq + 1e-15);
        EXPECT_EQ(tr.rows[t].deployments, static_cast<std::int64_t>(t));
    }
}

TEST(Stagewise, StaticDeploymentsPerStage) {
    const auto p = quad1d(0.0, 0.5);
    const auto ref = ref_for(p);
    const auto tr = stagewise_mba_run(p, scalar(4.0), ModelKind{Model::full, 1}, StageVersion::II, 0.5, 12, 3, opts_with(ref));
    EXPECT_EQ(tr.deployments(), 12);
    EXPECT_LT(tr.last().dist_sq, tr.rows.front().dist_sq);
    for (std::size_t t = 1; t < tr.rows.size(); ++t) {
        EXPECT_GE(tr.rows[t].deployments, tr.rows[t - 1].deployments);
        EXPECT_GT(tr.rows[t].samples, tr.rows[t - 1].samples);
    }
}

TEST(Stagewise, AsgPerStageGapFactor) {
    for (double gamma : {0.3, 0.0}) {
        const auto p = quad1d(gamma, 0.0);
        const auto ref = ref_for(p);
        const double factor = 1.0 / (2 * (1 - p.constants.rho()));
        const auto tr = stagewise_asg_run(p, scalar(-3.0), 0, 6, 1, opts_with(ref));
        for (std::size_t t = 1; t < tr.rows.size(); ++t) {
            EXPECT_LE(tr.rows[t].gap, factor * tr.rows[t - 1].gap + 1e-15) << "gamma " << gamma;
        }
    }
}

TEST(Stagewise, AsgStaysAtEquilibrium) {
    const auto p = quad1d(0.3, 0.0);
    const Point xb = closed_form_equilibrium(p).x_bar;
    const auto tr = stagewise_asg_run(p, xb, 0, 4, 1);
    for (const auto& r : tr.rows) EXPECT_NEAR(r.x(0), xb(0), 1e-13);
    EXPECT_THROW(stagewise_asg_run(quad1d(0.6, 0.0), xb, 0, 4, 1), ParameterError);
}
