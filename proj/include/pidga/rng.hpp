#pragma once

#include <cstdint>
#include <random>

namespace pidga {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).  Used to derive independent
/// stream seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// 64-bit Mersenne Twister (std::mt19937_64, whose output sequence is fixed by
/// the standard) with distribution code kept local so results do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace pidga
