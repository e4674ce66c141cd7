#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace orgsim {

// Deterministic random stream. Every draw goes through an explicit helper so
// the consumption pattern is fixed and reproducible at any thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [lo, hi], both inclusive. Unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Box-Muller; consumes two uniforms, caches nothing.
    double normal(double mean, double sd);

private:
    std::mt19937_64 engine_;
};

// Stable seed for a (base seed, sweep point, replicate index) triple, so any
// replicate can be re-run in isolation.
std::uint64_t mix_seed(std::uint64_t base, std::string_view key, std::uint64_t index);

}  // namespace orgsim
