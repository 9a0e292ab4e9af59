#pragma once

#include "ddopt/algorithms/trajectory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ddopt {

struct RegularizerSpec {
    std::string kind = "zero";  // zero | ssn | l1 | box | ball
    double mu = 0.0;
    double lambda = 0.0;
    double lo = -1.0;
    double hi = 1.0;
    double radius = 1.0;
};

struct ProblemSpec {
    std::string name = "quad1d";  // quad1d | quadNd | strategic-logistic
    double gamma = 0.5;           // shift scale (quad*) or gamma_u (strategic-logistic)
    double sigma = 1.0;
    double m0 = 1.0;
    std::int64_t d = 2;
    double kappa = 10.0;
    std::int64_t n_agents = 200;
    double lambda = 1.0;
    double x_bound = 5.0;
    std::string population_csv;
    std::uint64_t population_seed = 7;
    RegularizerSpec reg;
    std::vector<double> x0;  // empty = zeros; one entry = broadcast
};

struct AlgorithmSpec {
    std::string name = "sg";
    std::string wrap;              // "" | restart-geo | restart-minibatch
    double eta = 0.0;              // 0 = algorithm default
    std::string schedule = "constant";  // constant | inverse_time | linear_growth
    double schedule_a = 0.0;       // 0 = alpha (inverse_time) or L (linear_growth)
    std::int64_t batch = 1;
    bool average = false;
    std::string model = "linear";  // inner model of stage-mba-*
    std::int64_t inner_J = 0;
    double gamma0 = 0.0;
    double eps = 1e-3;             // restart target accuracy
    double Delta = 0.0;            // 0 = computed from the equilibrium oracle
};

struct RunSpec {
    std::vector<std::uint64_t> seeds{1};
    std::int64_t budget = 1000;
    Target target = Target::distance;
    std::string sweep_axis;  // "" | gamma | eps
    std::vector<double> sweep_grid;
    std::string out_dir = "out";
    std::int64_t record_every = 1;
    std::int64_t gap_samples = 20000;
    double stop_tolerance = 0.0;
    int threads = 0;  // 0 = hardware concurrency
};

struct ExperimentConfig {
    ProblemSpec problem;
    AlgorithmSpec algorithm;
    RunSpec run;
};

// INI file with [problem], [algorithm] and [run] sections. Unknown keys are errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

// Checks names against the registries and the seed list; throws ParameterError.
void validate(const ExperimentConfig& cfg);

// "1-50", "1,2,7" or "1-3,9".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// Added to every seed; read from DDOPT_SEED_OFFSET (0 when unset).
std::uint64_t seed_offset_from_env();

}  // namespace ddopt
