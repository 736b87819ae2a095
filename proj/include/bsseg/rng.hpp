#pragma once

#include <cstdint>
#include <random>

namespace bsseg {

// Seed-reproducible generator. Every random decision in the toolkit flows
// through this wrapper rather than through std:: distributions, so a given
// seed produces the same byte stream no matter which standard library the
// binary was built against.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Requires n >= 1.
    std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace bsseg
