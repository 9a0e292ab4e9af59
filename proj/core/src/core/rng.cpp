#include "ddopt/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace ddopt {

double CounterRng::uniform(std::uint64_t counter) const {
    // 53 random bits, shifted off zero.
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t k) const {
    const double u1 = uniform(2 * k);
    const double u2 = uniform(2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::index(std::uint64_t counter, std::uint64_t n) const {
    __extension__ using u128 = unsigned __int128;
    const u128 wide = static_cast<u128>(bits(counter)) * n;
    return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace ddopt
