#include "ddopt/core/wasserstein.hpp"

#include "ddopt/core/types.hpp"

#include <algorithm>
#include <cmath>

namespace ddopt {

double w1_empirical_1d(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ParameterError("w1_empirical_1d: empty sample");
    if (a.size() != b.size()) throw ParameterError("w1_empirical_1d: unequal sample sizes");
    if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end()))
        throw ParameterError("w1_empirical_1d: samples must be sorted ascending");
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
    return total / static_cast<double>(a.size());
}

}  // namespace ddopt
