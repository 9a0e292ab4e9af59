#pragma once

#include "ddopt/algorithms/trajectory.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ddopt {

enum class FitMode {
    linear,  // log(metric) against t; the factor is exp(slope)
    logt,    // metric * t against log t
};

struct RateFit {
    bool available = false;
    std::string diagnostic;
    std::int64_t t_start = 0;
    std::int64_t t_end = 0;
    std::size_t points = 0;
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double factor = std::numeric_limits<double>::quiet_NaN();  // exp(slope) in linear mode
    double r2 = std::numeric_limits<double>::quiet_NaN();
    double theory = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN();  // theory - factor
};

struct FitOptions {
    FitMode mode = FitMode::linear;
    Target metric = Target::distance;  // distance fits sqrt(dist_sq)
    double burn_in = 0.1;
    // Noise floor in raw units (dist_sq or gap); NaN uses the trailing-quartile median.
    double floor = std::numeric_limits<double>::quiet_NaN();
    double theory = std::numeric_limits<double>::quiet_NaN();
    std::size_t min_points = 20;
};

// Fits a (t, raw metric) series; raw is dist_sq or gap.
RateFit fit_series(const std::vector<double>& t, const std::vector<double>& raw, const FitOptions& opts);

// Averages the metric across runs at each recorded t, then fits.
RateFit fit_rate(const std::vector<Trajectory>& runs, const FitOptions& opts);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
// Ordinary least squares; r2 clamped to [0, 1] (NaN for a constant response).
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ddopt
