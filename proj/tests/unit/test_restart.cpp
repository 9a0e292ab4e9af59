#include "ddopt/algorithms/restart.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/problems/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ddopt;

TEST(MinibatchPlan, NoiseFreeHasSingleStage) {
    const auto plan = minibatch_plan(10.0, 1.0, 0.5, 0.0, 1e-3);
    EXPECT_EQ(plan.K, 0);
    ASSERT_EQ(plan.iters.size(), 1u);
    EXPECT_EQ(plan.iters[0], static_cast<std::int64_t>(std::ceil(std::log(2 * 10.0 / 1e-3) / 0.5)));
}

TEST(MinibatchPlan, WarmupExample) {
    // C = 1, tau = 0.1, Delta/eps = e: T_0 = ceil(10 log(2e)) = 17
    const auto plan = minibatch_plan(std::exp(1.0), 1.0, 0.1, 0.0, 1.0);
    EXPECT_EQ(plan.iters[0], 17);
}

TEST(MinibatchPlan, BatchesDouble) {
    const auto plan = minibatch_plan(1.0, 2.0, 0.25, 1.0, 1e-2);
    EXPECT_EQ(plan.K, static_cast<std::int64_t>(std::ceil(1 + std::log2(100.0))));
    ASSERT_EQ(plan.batch.size(), static_cast<std::size_t>(plan.K + 1));
    EXPECT_EQ(plan.batch[0], 1);
    for (std::int64_t k = 1; k <= plan.K; ++k) {
        EXPECT_EQ(plan.batch[static_cast<std::size_t>(k)], std::int64_t{1} << k);
        EXPECT_EQ(plan.iters[static_cast<std::size_t>(k)], static_cast<std::int64_t>(std::ceil(std::log(8.0) / 0.25)));
    }
}

TEST(MinibatchPlan, SampleTotalWithinOrderBound) {
    // sum m_k T_k = O(tau^-1 log(2 C Delta/eps) + B log(4C)/(tau eps))
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double tau = 0.2;
        const double B = 3.0;
        const double C = 1.0;
        const auto plan = minibatch_plan(5.0, C, tau, B, eps);
        double total = 0.0;
        for (std::size_t k = 0; k < plan.iters.size(); ++k) total += static_cast<double>(plan.batch[k] * plan.iters[k]);
        const double order = std::log(2 * C * 5.0 / eps) / tau + B * std::log(4 * C) / (tau * eps);
        EXPECT_LE(total, 8.0 * order + 2.0 * static_cast<double>(plan.K + 1)) << eps;
    }
}

TEST(GeometricPlan, WarmupExample) {
    // c = 1, delta0 = 0.5, C = 2, Delta/eps = 4: T_0 = ceil(2 log 16) = 6
    const auto plan = geometric_plan(4.0, 2.0, 0.0, 0.5, [](double d) { return d; }, 1.0);
    EXPECT_EQ(plan.iters[0], 6);
}

TEST(GeometricPlan, InsideNoiseBall) {
    // D delta0 = eps: K = ceil(1 + log2(1)) = 1
    const auto plan = geometric_plan(1.0, 1.0, 2.0, 0.5, [](double d) { return 0.3 * d; }, 1.0);
    EXPECT_EQ(plan.K, 1);
    const auto tiny = geometric_plan(1.0, 1.0, 1.0, 0.5, [](double d) { return 0.3 * d; }, 1.0);
    EXPECT_EQ(tiny.K, 0);
}

TEST(GeometricPlan, StepsHalve) {
    const auto plan = geometric_plan(2.0, 1.0, 4.0, 0.5, [](double d) { return d; }, 1e-3);
    for (std::size_t k = 1; k < plan.delta.size(); ++k) {
        EXPECT_DOUBLE_EQ(plan.delta[k], plan.delta[k - 1] / 2);
        EXPECT_EQ(plan.iters[k], static_cast<std::int64_t>(std::ceil(std::log(4.0) / plan.delta[k])));
    }
}

TEST(GeometricPlan, IterationTotalWithinOrderBound) {
    const double c = 0.5;
    const double D = 2.0;
    const double delta0 = 0.5;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const auto plan = geometric_plan(3.0, 1.0, D, delta0, [c](double d) { return c * d; }, eps);
        double total = 0.0;
        for (auto t : plan.iters) total += static_cast<double>(t);
        const double order = std::log(2 * 3.0 / eps) / (c * delta0) + D * std::log(4.0) / (eps * c);
        EXPECT_LE(total, 8.0 * order) << eps;
    }
}

TEST(Restart, DriversFollowPlanAndSeedStages) {
    const auto p = quad1d(0.5, 1.0);
    const Reference ref = make_reference(p, closed_form_equilibrium(p));
    std::vector<std::uint64_t> seen;
    const StepInner inner = [&](const Point& y0, double delta, std::int64_t T, std::uint64_t seed) {
        seen.push_back(seed);
        RunOptions o;
        o.reference = &ref;
        return sg_run(p, y0, StepSchedule::constant(delta), T, seed, o);
    };
    auto psi = [](double d) { return d / 3.0; };
    const auto res = geometric_decay(inner, Point::Zero(1), nullptr, 4.0, 1.0, 2.0, 0.5, psi, 1e-2, 7);
    const auto plan = geometric_plan(4.0, 1.0, 2.0, 0.5, psi, 1e-2);
    ASSERT_EQ(res.stages.size(), plan.iters.size());
    std::int64_t total = 0;
    for (std::size_t k = 0; k < res.stages.size(); ++k) {
        EXPECT_EQ(res.stages[k].iters, plan.iters[k]);
        EXPECT_DOUBLE_EQ(res.stages[k].delta, plan.delta[k]);
        EXPECT_TRUE(std::isnan(res.stages[k].h));
        total += plan.iters[k];
    }
    EXPECT_EQ(res.traj.last().t, total);
    EXPECT_EQ(res.traj.samples(), total);
    for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_NE(seen[i], seen[i - 1]);
    EXPECT_EQ(res.x, res.traj.last().x);
}

TEST(Restart, BudgetCapsInnerIterations) {
    const auto p = quad1d(0.5, 1.0);
    const MinibatchInner inner = [&](const Point& y0, std::int64_t m, std::int64_t T, std::uint64_t seed) {
        RunOptions o;
        o.batch = m;
        return sg_run(p, y0, StepSchedule::constant(0.25), T, seed, o);
    };
    const auto res = minibatch_restart(inner, Point::Zero(1), nullptr, 4.0, 2.0, 0.1, 1.0, 1e-4, 1, 100);
    EXPECT_TRUE(res.budget_capped);
    std::int64_t total = 0;
    for (const auto& s : res.stages) total += s.iters;
    EXPECT_LE(total, 100);
    EXPECT_EQ(res.traj.last().t, total);
}

TEST(Restart, MinibatchSampleAccounting) {
    const auto p = quad1d(0.5, 1.0);
    const MinibatchInner inner = [&](const Point& y0, std::int64_t m, std::int64_t T, std::uint64_t seed) {
        RunOptions o;
        o.batch = m;
        return sg_run(p, y0, StepSchedule::constant(0.25), T, seed, o);
    };
    auto h = [](const Point& y) { return y.squaredNorm(); };
    const auto res = minibatch_restart(inner, Point::Zero(1), h, 4.0, 1.0, 0.2, 0.5, 1e-2, 3);
    std::int64_t samples = 0;
    for (const auto& s : res.stages) {
        EXPECT_EQ(s.samples, s.batch * s.iters);
        EXPECT_FALSE(std::isnan(s.h));
        samples += s.samples;
    }
    EXPECT_EQ(res.traj.samples(), samples);
}
