#include "orgsim/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace orgsim {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    if (lo > hi) {
        throw std::invalid_argument("uniform_int: lo > hi");
    }
    const std::uint64_t range =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1u;
    if (range == 0) {  // full 64-bit span
        return static_cast<std::int64_t>(engine_());
    }
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t overhang = (max % range + 1u) % range;  // 2^64 mod range
    std::uint64_t x = engine_();
    while (overhang != 0 && x >= max - overhang + 1u) {
        x = engine_();
    }
    return lo + static_cast<std::int64_t>(x % range);
}

double Rng::normal(double mean, double sd)
{
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    return mean + sd * z;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x)
{
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::string_view key, std::uint64_t index)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the sweep key
    for (unsigned char c : key) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    std::uint64_t x = base;
    std::uint64_t out = splitmix64(x);
    x ^= h;
    out ^= splitmix64(x);
    x ^= index;
    out ^= splitmix64(x);
    return out;
}

}  // namespace orgsim
