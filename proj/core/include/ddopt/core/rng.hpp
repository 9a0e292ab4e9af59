#pragma once

#include <cstdint>

namespace ddopt {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix64(seed ^ mix64(a + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

// Counter-based generator: every draw is a pure function of (key, counter).
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

    constexpr std::uint64_t key() const { return key_; }

    constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter));
    }

    // Uniform on the open interval (0, 1).
    double uniform(std::uint64_t counter) const;

    // Standard normal via Box-Muller on counters 2k and 2k+1.
    double normal(std::uint64_t k) const;

    // Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t counter, std::uint64_t n) const;

private:
    std::uint64_t key_;
};

}  // namespace ddopt
