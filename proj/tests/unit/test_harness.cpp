#include "ddopt/algorithms/conceptual.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/harness/acceptance.hpp"
#include "ddopt/harness/config.hpp"
#include "ddopt/harness/experiment.hpp"
#include "ddopt/harness/rate_fit.hpp"
#include "ddopt/harness/regime_sweep.hpp"
#include "ddopt/harness/registry.hpp"
#include "ddopt/problems/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ddopt;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"(
[problem]
name = quad1d
gamma = 0.5
sigma = 1

[algorithm]
name = sg
eta = 0.05

[run]
seeds = 1-2
budget = 200
record_every = 10
)";

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(::testing::TempDir()) / ("ddopt_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t count_traj(const fs::path& dir) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().filename().string().rfind("traj_", 0) == 0) ++n;
    }
    return n;
}

}  // namespace

TEST(Config, ParsesSectionsAndDefaults) {
    const auto cfg = parse_config(kBase);
    EXPECT_EQ(cfg.problem.name, "quad1d");
    EXPECT_DOUBLE_EQ(cfg.problem.gamma, 0.5);
    EXPECT_EQ(cfg.algorithm.name, "sg");
    EXPECT_DOUBLE_EQ(cfg.algorithm.eta, 0.05);
    EXPECT_EQ(cfg.run.seeds, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(cfg.run.budget, 200);
    EXPECT_EQ(cfg.run.target, Target::distance);
}

TEST(Config, RejectsUnknownKeysAndNames) {
    EXPECT_THROW(parse_config(std::string(kBase) + "bogus = 1\n"), ParameterError);
    auto cfg = parse_config(kBase);
    cfg.algorithm.name = "nope";
    EXPECT_THROW(validate(cfg), ParameterError);
    cfg = parse_config(kBase);
    cfg.problem.name = "nope";
    EXPECT_THROW(validate(cfg), ParameterError);
}

TEST(Config, SeedAndNumberLists) {
    EXPECT_EQ(parse_seed_list("1-3,9"), (std::vector<std::uint64_t>{1, 2, 3, 9}));
    EXPECT_EQ(parse_seed_list("5"), (std::vector<std::uint64_t>{5}));
    EXPECT_THROW(parse_seed_list("3-1"), ParameterError);
    EXPECT_EQ(parse_double_list("0.5, 1e-3,2"), (std::vector<double>{0.5, 1e-3, 2.0}));
}

TEST(Registry, EveryAlgorithmRunsOnQuad1d) {
    const auto p = quad1d(0.2, 1.0, 1.0, Regularizer::ball(3.0));
    const auto ref = make_reference(p, closed_form_equilibrium(p));
    RunContext ctx;
    ctx.reference = &ref;
    for (const auto& name : algorithm_names()) {
        AlgorithmSpec s;
        s.name = name;
        const auto tr = run_algorithm(p, s, Point::Zero(1), 50, 1, ctx);
        ASSERT_FALSE(tr.rows.empty()) << name;
        EXPECT_TRUE(tr.last().x.allFinite()) << name;
        EXPECT_FALSE(tr.diverged) << name;
    }
}

TEST(Registry, BuildProblemFromSpec) {
    ProblemSpec s;
    s.name = "quadNd";
    s.d = 3;
    s.kappa = 9;
    s.gamma = 0.1;
    s.reg.kind = "l1";
    s.reg.lambda = 0.2;
    const auto p = build_problem(s);
    EXPECT_EQ(p.dim, 3);
    EXPECT_DOUBLE_EQ(p.constants.kappa(), 9.0);
    EXPECT_EQ(p.reg.kind(), Regularizer::Kind::l1);
    s.x0 = {2.0};
    EXPECT_EQ(initial_point(s, 3), Point::Constant(3, 2.0));
}

TEST(Experiment, FileCountsAndDeterminism) {
    const auto cfg = parse_config(kBase);
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    run_experiment(cfg, a.string());
    run_experiment(cfg, b.string());
    EXPECT_EQ(count_traj(a), 2u);
    EXPECT_TRUE(fs::exists(a / "summary.csv"));
    for (const auto& e : fs::directory_iterator(a)) EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Experiment, GammaSweepFileCount) {
    auto cfg = parse_config(kBase);
    cfg.run.seeds = {1, 2, 3};
    cfg.run.sweep_axis = "gamma";
    cfg.run.sweep_grid = {0.1, 0.2, 0.3, 0.4, 0.5};
    const auto dir = fresh_dir("sweep");
    const auto res = run_experiment(cfg, dir.string());
    EXPECT_EQ(res.runs.size(), 15u);
    EXPECT_EQ(count_traj(dir), 15u);
    fs::remove_all(dir);
}

TEST(Experiment, CsvSchemaAndCounters) {
    const auto cfg = parse_config(kBase);
    const auto dir = fresh_dir("schema");
    const auto res = run_experiment(cfg, dir.string());
    ASSERT_FALSE(res.trajectory_files.empty());
    std::ifstream is(res.trajectory_files.front());
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header, "run_id,algo,t,samples,deployments,dist_sq,gap,gap_se,eta");
    const auto rows = read_trajectory_csv(res.trajectory_files.front());
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.back().t, 200);

    std::int64_t samples = 0;
    std::int64_t deployments = 0;
    for (const auto& r : res.runs) {
        samples += r.traj.samples();
        deployments += r.traj.deployments();
    }
    const auto& last = res.summary.back();
    EXPECT_EQ(last.t, 200);
    EXPECT_EQ(last.samples_total, samples);
    EXPECT_EQ(last.deployments_total, deployments);
    EXPECT_EQ(last.runs, 2);
    fs::remove_all(dir);
}

TEST(Experiment, SeedOffsetChangesRuns) {
    const auto cfg = parse_config(kBase);
    const auto base = run_experiment(cfg, "");
    ::setenv("DDOPT_SEED_OFFSET", "100", 1);
    const auto shifted = run_experiment(cfg, "");
    ::unsetenv("DDOPT_SEED_OFFSET");
    EXPECT_NE(base.runs.front().traj.last().x, shifted.runs.front().traj.last().x);
}

TEST(Experiment, ParallelForCoversRange) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw ParameterError("boom");
                 }),
                 ParameterError);
}

TEST(RateFit, RepeatedMinimizationFactor) {
    const auto p = quad1d(0.5, 0.0);
    const auto ref = make_reference(p, closed_form_equilibrium(p));
    RunOptions o;
    o.reference = &ref;
    const auto tr = conceptual_run(p, Point::Constant(1, -10.0), ConceptualMethod::repeated_minimization, 1.0, 40, o);
    FitOptions f;
    f.floor = 0.0;
    const auto fit = fit_rate({tr}, f);
    ASSERT_TRUE(fit.available) << fit.diagnostic;
    EXPECT_NEAR(fit.factor, 0.5, 1e-6);
    EXPECT_NEAR(fit.r2, 1.0, 1e-9);
}

TEST(RateFit, TruncatesAtNoiseFloor) {
    const auto p = quad1d(0.5, 1.0);
    const auto ref = make_reference(p, closed_form_equilibrium(p));
    const double eta = 0.05;
    std::vector<Trajectory> runs;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        RunOptions o;
        o.reference = &ref;
        runs.push_back(sg_run(p, Point::Constant(1, 50.0), StepSchedule::constant(eta), 400, s, o));
    }
    FitOptions f;
    f.floor = 2.0 * eta / 0.5;
    const auto fit = fit_rate(runs, f);
    ASSERT_TRUE(fit.available) << fit.diagnostic;
    EXPECT_LT(fit.t_end, 400);
    EXPECT_NEAR(fit.factor, 1 - eta * 0.5, 5e-3);
}

TEST(RateFit, ConstantSeriesUnavailable) {
    std::vector<double> t;
    std::vector<double> v;
    for (int i = 0; i < 100; ++i) {
        t.push_back(i);
        v.push_back(0.25);
    }
    EXPECT_FALSE(fit_series(t, v, FitOptions{}).available);
}

TEST(RateFit, LeastSquaresExact) {
    const auto f = least_squares({0, 1, 2, 3}, {1, 3, 5, 7});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r2, 1.0, 1e-14);
}

TEST(RegimeSweep, RepeatedMinimizationBoundary) {
    ProblemSpec prob;
    prob.sigma = 0.0;
    AlgorithmSpec algo;
    algo.name = "rm";
    const auto rows = regime_sweep(prob, algo, {0.0, 0.5, 0.9, 1.1}, {1}, 400);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].verdict, RegimeVerdict::converges);
    EXPECT_EQ(rows[1].verdict, RegimeVerdict::converges);
    EXPECT_EQ(rows[2].verdict, RegimeVerdict::converges);
    EXPECT_EQ(rows[3].verdict, RegimeVerdict::diverges);
    EXPECT_NEAR(rows[1].fitted_factor, 0.5, 1e-6);
    EXPECT_NEAR(rows[2].fitted_factor, 0.9, 1e-6);
    EXPECT_LE(rows[1].fitted_factor, rows[2].fitted_factor);
}

TEST(RegimeSweep, SgConvergesToNoiseBallBelowBoundary) {
    ProblemSpec prob;
    prob.sigma = 1.0;
    AlgorithmSpec algo;
    algo.name = "sg";
    algo.eta = 0.05;
    const auto rows = regime_sweep(prob, algo, {0.9}, {1, 2, 3, 4, 5}, 6000);
    EXPECT_EQ(rows.front().verdict, RegimeVerdict::converges);
    EXPECT_THROW(regime_sweep(prob, algo, {2.5}, {1}, 10), ParameterError);
}

TEST(Acceptance, ListsElevenCriteria) {
    const auto& c = acceptance_criteria();
    ASSERT_EQ(c.size(), 11u);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].id, static_cast<int>(i + 1));
    const auto r = run_criterion("relative-bias");
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_EQ(format_result(r).rfind("[PASS] 3 relative-bias", 0), 0u);
    EXPECT_FALSE(run_criterion("missing").pass);
}
