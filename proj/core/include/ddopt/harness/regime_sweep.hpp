#pragma once

#include "ddopt/harness/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ddopt {

enum class RegimeVerdict { converges, diverges, indeterminate };

std::string to_string(RegimeVerdict v);

struct SweepRow {
    double gamma = 0.0;
    double rho = 0.0;
    double boundary = 1.0;           // rho at which the theory stops applying
    double converged_fraction = 0.0;
    double fitted_factor = 0.0;      // NaN when no fit is available
    double theory_factor = 0.0;      // NaN when the theory gives no factor for this algorithm
    RegimeVerdict verdict = RegimeVerdict::indeterminate;
};

// Per-step contraction factor of the distance to x_bar predicted for the algorithm (NaN if none).
double theory_distance_factor(const std::string& algo, double alpha, double beta, double gamma, double L, double eta);

// Runs algo on the problem template for every gamma in the grid and classifies convergence.
// A run converges when it does not diverge and its trailing metric is at most
// max(1e-2 * initial, 3 * noise floor).
std::vector<SweepRow> regime_sweep(const ProblemSpec& problem, const AlgorithmSpec& algo, const std::vector<double>& gammas,
                                   const std::vector<std::uint64_t>& seeds, std::int64_t budget,
                                   Target target = Target::distance, int threads = 0);

}  // namespace ddopt
