#pragma once

#include "ddopt/core/types.hpp"
#include "ddopt/problems/problem.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ddopt {

class StepSchedule {
public:
    enum class Kind { constant, inverse_time, staged, linear_growth };

    static StepSchedule constant(double eta);
    // eta_t = 1 / (a t)
    static StepSchedule inverse_time(double a);
    // eta_t = etas[min(t, n) - 1]
    static StepSchedule staged(std::vector<double> etas);
    // eta_t = t / a
    static StepSchedule linear_growth(double a);

    Kind kind() const { return kind_; }
    // Step for 1-based iteration (or stage) t.
    double eta(std::int64_t t) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::constant;
    double a_ = 1.0;
    std::vector<double> etas_;
};

// Which convergence metric an experiment targets.
enum class Target { distance, gap };

std::string to_string(Target t);

// alpha - gamma beta (distance) or alpha - 2 gamma beta (gap).
double alpha_hat(const ProblemConstants& c, Target target);
// alpha1 + alpha2 - gamma beta (distance) or alpha1 + alpha2 - 2 gamma beta (gap).
double alpha_hat(const ModelConstants& m, double gamma_beta, Target target);

// Metric oracle against the equilibrium point.
struct Reference {
    Point x_bar;
    // (gap, standard error) of phi(x) - phi(x_bar).
    std::function<std::pair<double, double>(const Point&)> gap;
};

struct TrajectoryRow {
    std::int64_t t = 0;
    Point x;
    Point x_avg;   // empty when no averaging is performed
    Point query;   // point whose distribution was sampled in this step (empty for row 0)
    std::int64_t samples = 0;
    std::int64_t deployments = 0;
    double dist_sq = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    double gap_se = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
    std::string algo;
    std::vector<TrajectoryRow> rows;
    bool converged = false;
    bool diverged = false;
    bool budget_exhausted = false;
    std::vector<std::string> notes;
    double max_grad_norm = 0.0;
    // Accelerated-method parameter traces, one entry per iteration.
    std::vector<double> asg_delta;
    std::vector<double> asg_beta;
    std::vector<double> asg_gamma;

    const TrajectoryRow& last() const { return rows.back(); }
    // Averaged point when present, else the last iterate.
    const Point& output() const;
    std::int64_t samples() const { return rows.empty() ? 0 : rows.back().samples; }
    std::int64_t deployments() const { return rows.empty() ? 0 : rows.back().deployments; }
};

struct RunOptions {
    const Reference* reference = nullptr;
    // Record every k-th row (the first and last rows are always kept).
    std::int64_t record_every = 1;
    std::int64_t batch = 1;
    // Running average for the greedy stochastic gradient method.
    bool average = false;
    // Stop as soon as the chosen metric (needs a reference) drops to this level; 0 disables.
    double stop_tolerance = 0.0;
    Target stop_metric = Target::distance;
    double divergence_bound = 1e8;
};

// Appends rows of `next` to `acc`, shifting t and the cumulative counters; drops the duplicate start row.
void append_trajectory(Trajectory& acc, const Trajectory& next);

}  // namespace ddopt
