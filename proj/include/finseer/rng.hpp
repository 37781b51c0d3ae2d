#pragma once

#include <cstdint>
#include <random>

namespace finseer {

// Seeded uniform generator. mt19937_64 output is fully specified by the
// standard and the [0,1) mapping below uses only exact integer/double steps,
// so the same seed produces the same stream on every platform.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n), n > 0. Simple rejection-free modulo is fine
    // for the shuffle use; n is tiny compared to 2^64.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

} // namespace finseer
