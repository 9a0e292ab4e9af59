#pragma once

#include "ddopt/algorithms/trajectory.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace ddopt::detail {

inline void fill_metrics(TrajectoryRow& row, const RunOptions& opts) {
    if (opts.reference == nullptr) return;
    row.dist_sq = (row.x - opts.reference->x_bar).squaredNorm();
    if (opts.reference->gap) {
        const auto [g, se] = opts.reference->gap(row.x_avg.size() > 0 ? row.x_avg : row.x);
        row.gap = g;
        row.gap_se = se;
    }
}

inline bool reached_tolerance(const TrajectoryRow& row, const RunOptions& opts) {
    if (opts.stop_tolerance <= 0.0 || opts.reference == nullptr) return false;
    const double v = opts.stop_metric == Target::distance ? row.dist_sq : row.gap;
    return std::isfinite(v) && v <= opts.stop_tolerance;
}

inline bool diverged(const Point& x, const RunOptions& opts) {
    return !x.allFinite() || x.norm() > opts.divergence_bound;
}

inline void add_note(Trajectory& traj, const std::string& note) {
    for (const auto& n : traj.notes) {
        if (n == note) return;
    }
    traj.notes.push_back(note);
}

// Records a row subject to thinning; returns true when the run should stop.
inline bool record(Trajectory& traj, TrajectoryRow row, const RunOptions& opts, bool force) {
    bool stop = false;
    const bool need_metrics = force || opts.stop_tolerance > 0.0 || row.t % std::max<std::int64_t>(opts.record_every, 1) == 0;
    if (need_metrics) fill_metrics(row, opts);
    if (reached_tolerance(row, opts)) {
        traj.converged = true;
        stop = true;
    }
    if (diverged(row.x, opts)) {
        traj.diverged = true;
        stop = true;
    }
    if (force || stop || row.t % std::max<std::int64_t>(opts.record_every, 1) == 0) {
        traj.rows.push_back(std::move(row));
    }
    return stop;
}

// Makes sure the final state is the last recorded row.
inline void finish(Trajectory& traj, TrajectoryRow last, const RunOptions& opts) {
    if (!traj.rows.empty() && traj.rows.back().t == last.t) return;
    fill_metrics(last, opts);
    traj.rows.push_back(std::move(last));
}

}  // namespace ddopt::detail
