#pragma once

#include <span>

namespace ddopt {

// W1 between two equal-size empirical measures on the line, given sorted samples.
double w1_empirical_1d(std::span<const double> a, std::span<const double> b);

}  // namespace ddopt
