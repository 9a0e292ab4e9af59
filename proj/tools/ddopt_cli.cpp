// Command line front end: run, sweep, fit and accept.

#include "ddopt/ddopt.hpp"

#include <CLI11.hpp>

#include <glob.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

std::vector<std::string> expand_glob(const std::string& pattern) {
    glob_t g{};
    std::vector<std::string> out;
    if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
    return out;
}

int report_errors(const ddopt::ExperimentResult& res) {
    int bad = 0;
    for (const auto& r : res.runs) {
        if (r.error.empty()) continue;
        std::cerr << r.run_id << ": " << r.error << '\n';
        ++bad;
    }
    return bad == 0 ? 0 : 2;
}

void print_run_summary(const ddopt::ExperimentResult& res) {
    for (const auto& r : res.runs) {
        if (!r.error.empty() || r.traj.rows.empty()) continue;
        const auto& last = r.traj.last();
        std::printf("%-24s %-22s t=%-9lld samples=%-11lld deployments=%-9lld dist_sq=%-12.5g gap=%.5g%s\n",
                    r.run_id.c_str(), r.traj.algo.c_str(), static_cast<long long>(last.t),
                    static_cast<long long>(last.samples), static_cast<long long>(last.deployments), last.dist_sq, last.gap,
                    r.traj.diverged ? " (diverged)" : "");
        for (const auto& n : r.traj.notes) std::printf("    note: %s\n", n.c_str());
    }
    if (!res.summary_file.empty()) std::printf("wrote %zu trajectories and %s\n", res.trajectory_files.size(), res.summary_file.c_str());
}

int cmd_run(const std::string& config, const std::string& out) {
    ddopt::ExperimentConfig cfg = ddopt::load_config(config);
    if (!out.empty()) cfg.run.out_dir = out;
    const auto res = ddopt::run_experiment(cfg);
    print_run_summary(res);
    return report_errors(res);
}

int cmd_sweep(const std::string& config, const std::string& axis, const std::string& grid, const std::string& out) {
    ddopt::ExperimentConfig cfg = ddopt::load_config(config);
    if (!out.empty()) cfg.run.out_dir = out;
    cfg.run.sweep_axis = axis;
    cfg.run.sweep_grid = ddopt::parse_double_list(grid);
    ddopt::validate(cfg);
    const auto res = ddopt::run_experiment(cfg);
    print_run_summary(res);
    if (axis == "gamma") {
        std::vector<std::uint64_t> seeds;
        const std::uint64_t offset = ddopt::seed_offset_from_env();
        for (auto s : cfg.run.seeds) seeds.push_back(s + offset);
        const auto rows = ddopt::regime_sweep(cfg.problem, cfg.algorithm, cfg.run.sweep_grid, seeds, cfg.run.budget,
                                              cfg.run.target, cfg.run.threads);
        std::printf("\n%10s %10s %10s %10s %14s %14s  %s\n", "gamma", "rho", "boundary", "conv", "fitted", "theory", "verdict");
        for (const auto& r : rows) {
            std::printf("%10.4g %10.4g %10.4g %10.2f %14.8g %14.8g  %s\n", r.gamma, r.rho, r.boundary, r.converged_fraction,
                        r.fitted_factor, r.theory_factor, ddopt::to_string(r.verdict).c_str());
        }
    }
    return report_errors(res);
}

int cmd_fit(const std::string& pattern, const std::string& mode, const std::string& metric, double burn_in, double floor) {
    const auto files = expand_glob(pattern);
    if (files.empty()) {
        std::cerr << "no files match " << pattern << '\n';
        return 2;
    }
    // Group runs by algorithm name; each file may hold one run.
    std::map<std::string, std::vector<ddopt::Trajectory>> by_algo;
    for (const auto& f : files) {
        std::map<std::string, ddopt::Trajectory> runs;
        for (const auto& row : ddopt::read_trajectory_csv(f)) {
            auto& tr = runs[row.run_id];
            tr.algo = row.algo;
            ddopt::TrajectoryRow r;
            r.t = row.t;
            r.samples = row.samples;
            r.deployments = row.deployments;
            r.dist_sq = row.dist_sq;
            r.gap = row.gap;
            r.gap_se = row.gap_se;
            r.eta = row.eta;
            tr.rows.push_back(std::move(r));
        }
        for (auto& [id, tr] : runs) by_algo[tr.algo].push_back(std::move(tr));
    }
    ddopt::FitOptions opts;
    opts.mode = mode == "logt" ? ddopt::FitMode::logt : ddopt::FitMode::linear;
    opts.metric = metric == "gap" || opts.mode == ddopt::FitMode::logt ? ddopt::Target::gap : ddopt::Target::distance;
    opts.burn_in = burn_in;
    if (floor >= 0.0) opts.floor = floor;
    int rc = 0;
    for (const auto& [algo, runs] : by_algo) {
        const auto fit = ddopt::fit_rate(runs, opts);
        if (!fit.available) {
            std::printf("%s: fit unavailable (%s)\n", algo.c_str(), fit.diagnostic.c_str());
            rc = 1;
            continue;
        }
        std::printf("%s: runs=%zu t=[%lld, %lld] points=%zu slope=%.10g intercept=%.10g r2=%.6f", algo.c_str(), runs.size(),
                    static_cast<long long>(fit.t_start), static_cast<long long>(fit.t_end), fit.points, fit.slope,
                    fit.intercept, fit.r2);
        if (opts.mode == ddopt::FitMode::linear) std::printf(" factor=%.10g", fit.factor);
        std::printf("\n");
    }
    return rc;
}

int cmd_accept(const std::string& suite) {
    std::vector<ddopt::CriterionResult> results;
    if (suite == "all") {
        for (const auto& c : ddopt::acceptance_criteria()) results.push_back(ddopt::run_criterion(c.id));
    } else {
        results.push_back(ddopt::run_criterion(suite));
    }
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s\n", ddopt::format_result(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ddopt: decision-dependent stochastic optimization experiments"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    auto* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("--config", config, "INI config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output directory (overrides [run] out_dir)");

    std::string axis = "gamma";
    std::string grid;
    auto* sweep = app.add_subcommand("sweep", "Sweep gamma or eps and classify regimes");
    sweep->add_option("--config", config, "INI config")->required()->check(CLI::ExistingFile);
    sweep->add_option("--axis", axis, "gamma | eps")->check(CLI::IsMember({"gamma", "eps"}));
    sweep->add_option("--grid", grid, "Comma-separated values")->required();
    sweep->add_option("--out", out, "Output directory");

    std::string traj;
    std::string mode = "linear";
    std::string metric = "distance";
    double burn_in = 0.1;
    double floor = -1.0;
    auto* fit = app.add_subcommand("fit", "Fit convergence rates to trajectory CSVs");
    fit->add_option("--traj", traj, "Glob of trajectory CSV files")->required();
    fit->add_option("--mode", mode, "linear | logt")->check(CLI::IsMember({"linear", "logt"}));
    fit->add_option("--metric", metric, "distance | gap")->check(CLI::IsMember({"distance", "gap"}));
    fit->add_option("--burn-in", burn_in, "Fraction of the horizon to skip");
    fit->add_option("--floor", floor, "Noise floor (default: trailing-quartile median)");

    std::string suite = "all";
    auto* accept = app.add_subcommand("accept", "Run acceptance criteria");
    accept->add_option("--suite", suite, "Criterion id or name, or 'all'");
    accept->add_flag_callback("--list", [] {
        for (const auto& c : ddopt::acceptance_criteria()) std::printf("%2d %-24s %5.0f s\n", c.id, c.name.c_str(), c.time_limit);
        std::exit(0);
    }, "List criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config, out);
        if (*sweep) return cmd_sweep(config, axis, grid, out);
        if (*fit) return cmd_fit(traj, mode, metric, burn_in, floor);
        if (*accept) return cmd_accept(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
