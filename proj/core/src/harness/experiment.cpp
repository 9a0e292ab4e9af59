#include "ddopt/harness/experiment.hpp"

#include "ddopt/equilibrium/equilibrium.hpp"
#include "ddopt/harness/registry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace ddopt {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_tag(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::shared_ptr<const Reference> reference_for(const DecisionProblem& p, std::int64_t gap_samples) {
    try {
        return std::make_shared<const Reference>(make_reference(p, solve_equilibrium(p), gap_samples));
    } catch (const NoCertificate&) {
    } catch (const UnsupportedOperation&) {
    }
    if (auto xb = algebraic_fixed_point(p)) return std::make_shared<const Reference>(make_reference(p, *xb, gap_samples));
    try {
        if (auto xb = empirical_fixed_point(p, Point::Zero(p.dim)))
            return std::make_shared<const Reference>(make_reference(p, *xb, gap_samples));
    } catch (const UnsupportedOperation&) {
    }
    return nullptr;
}

void write_trajectory_csv(std::ostream& os, const std::string& run_id, const Trajectory& traj) {
    os << "run_id,algo,t,samples,deployments,dist_sq,gap,gap_se,eta\n";
    for (const auto& r : traj.rows) {
        os << run_id << ',' << traj.algo << ',' << r.t << ',' << r.samples << ',' << r.deployments << ','
           << fmt(r.dist_sq) << ',' << fmt(r.gap) << ',' << fmt(r.gap_se) << ',' << fmt(r.eta) << '\n';
    }
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs) {
    struct Acc {
        std::int64_t n = 0;
        double d_sum = 0.0, d_sq = 0.0;
        std::int64_t d_n = 0;
        double g_sum = 0.0, g_sq = 0.0;
        std::int64_t g_n = 0;
        std::int64_t samples = 0, deployments = 0;
    };
    // Ordered by (sweep position, t); sweep positions follow first appearance.
    std::vector<double> order;
    std::map<std::pair<std::size_t, std::int64_t>, Acc> acc;
    for (const auto& run : runs) {
        std::size_t idx = 0;
        bool found = false;
        for (; idx < order.size(); ++idx) {
            if (order[idx] == run.sweep_value || (std::isnan(order[idx]) && std::isnan(run.sweep_value))) {
                found = true;
                break;
            }
        }
        if (!found) order.push_back(run.sweep_value);
        for (const auto& r : run.traj.rows) {
            Acc& a = acc[{idx, r.t}];
            ++a.n;
            if (std::isfinite(r.dist_sq)) {
                a.d_sum += r.dist_sq;
                a.d_sq += r.dist_sq * r.dist_sq;
                ++a.d_n;
            }
            if (std::isfinite(r.gap)) {
                a.g_sum += r.gap;
                a.g_sq += r.gap * r.gap;
                ++a.g_n;
            }
            a.samples += r.samples;
            a.deployments += r.deployments;
        }
    }
    auto stats = [](double sum, double sq, std::int64_t n, double& mean, double& se) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (n == 0) {
            mean = se = nan;
            return;
        }
        mean = sum / static_cast<double>(n);
        if (n < 2) {
            se = nan;
            return;
        }
        const double var = std::max(0.0, (sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
        se = std::sqrt(var / static_cast<double>(n));
    };
    std::vector<SummaryRow> out;
    for (const auto& [key, a] : acc) {
        SummaryRow row;
        row.sweep_value = order[key.first];
        row.t = key.second;
        row.runs = a.n;
        stats(a.d_sum, a.d_sq, a.d_n, row.dist_sq_mean, row.dist_sq_se);
        stats(a.g_sum, a.g_sq, a.g_n, row.gap_mean, row.gap_se);
        row.samples_total = a.samples;
        row.deployments_total = a.deployments;
        out.push_back(row);
    }
    return out;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "sweep_value,t,runs,dist_sq_mean,dist_sq_se,gap_mean,gap_se,samples_total,deployments_total\n";
    for (const auto& r : rows) {
        os << fmt(r.sweep_value) << ',' << r.t << ',' << r.runs << ',' << fmt(r.dist_sq_mean) << ','
           << fmt(r.dist_sq_se) << ',' << fmt(r.gap_mean) << ',' << fmt(r.gap_se) << ',' << r.samples_total << ','
           << r.deployments_total << '\n';
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
    validate(cfg);
    const std::uint64_t offset = seed_offset_from_env();
    const bool sweep = !cfg.run.sweep_axis.empty();
    const std::vector<double> grid = sweep ? cfg.run.sweep_grid : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};

    struct Point_ {
        DecisionProblem problem;
        AlgorithmSpec algo;
        std::shared_ptr<const Reference> ref;
        Point x0;
    };
    std::vector<Point_> points;
    for (double v : grid) {
        ProblemSpec ps = cfg.problem;
        AlgorithmSpec as = cfg.algorithm;
        if (sweep && cfg.run.sweep_axis == "gamma") ps.gamma = v;
        if (sweep && cfg.run.sweep_axis == "eps") as.eps = v;
        Point_ pt{build_problem(ps), as, nullptr, Point()};
        pt.ref = reference_for(pt.problem, cfg.run.gap_samples);
        pt.x0 = initial_point(ps, pt.problem.dim);
        points.push_back(std::move(pt));
    }

    ExperimentResult res;
    const std::size_t n_seeds = cfg.run.seeds.size();
    res.runs.resize(grid.size() * n_seeds);
    parallel_for(res.runs.size(), cfg.run.threads, [&](std::size_t job) {
        const std::size_t gi = job / n_seeds;
        const std::uint64_t seed = cfg.run.seeds[job % n_seeds] + offset;
        const Point_& pt = points[gi];
        RunRecord& rec = res.runs[job];
        rec.sweep_value = grid[gi];
        rec.seed = seed;
        rec.run_id = (sweep ? cfg.run.sweep_axis + sweep_tag(grid[gi]) + "_" : std::string()) + "s" + std::to_string(seed);
        RunContext ctx;
        ctx.reference = pt.ref.get();
        ctx.target = cfg.run.target;
        ctx.record_every = cfg.run.record_every;
        ctx.stop_tolerance = cfg.run.stop_tolerance;
        try {
            rec.traj = run_algorithm(pt.problem, pt.algo, pt.x0, cfg.run.budget, seed, ctx);
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    });
    for (const auto& r : res.runs) {
        if (!r.error.empty()) throw ParameterError("run " + r.run_id + ": " + r.error);
    }
    res.summary = summarize(res.runs);

    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw ParameterError("cannot create output directory " + out_dir + ": " + ec.message());
        for (const auto& r : res.runs) {
            const std::string path = (std::filesystem::path(out_dir) / ("traj_" + r.run_id + ".csv")).string();
            std::ofstream f(path, std::ios::binary);
            if (!f) throw ParameterError("cannot write " + path);
            write_trajectory_csv(f, r.run_id, r.traj);
            res.trajectory_files.push_back(path);
        }
        res.summary_file = (std::filesystem::path(out_dir) / "summary.csv").string();
        std::ofstream f(res.summary_file, std::ios::binary);
        if (!f) throw ParameterError("cannot write " + res.summary_file);
        write_summary_csv(f, res.summary);
    }
    return res;
}

std::vector<CsvRow> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("run_id,algo,t,", 0) != 0) throw ParameterError(path + ": bad header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 9) throw ParameterError(path + ": expected 9 columns");
        CsvRow r;
        r.run_id = f[0];
        r.algo = f[1];
        r.t = std::stoll(f[2]);
        r.samples = std::stoll(f[3]);
        r.deployments = std::stoll(f[4]);
        r.dist_sq = std::stod(f[5]);
        r.gap = std::stod(f[6]);
        r.gap_se = std::stod(f[7]);
        r.eta = std::stod(f[8]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ddopt
