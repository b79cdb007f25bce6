#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace jumpsift {

/// SplitMix64 finalizer; used for seeding and for deriving stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a master seed and a sequence of keys into one stream seed.
/// Distinct key sequences give distinct streams with overwhelming probability.
std::uint64_t derive_stream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// Bit pattern of a double, usable as a stream key.
std::uint64_t double_key(double x);

/// xoshiro256++ generator with portable normal and Poisson draws, so a seed
/// reproduces the same path regardless of the standard library in use.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal (Marsaglia polar method).
    double normal();

    /// Poisson count with the given mean.
    std::uint64_t poisson(double mean);

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace jumpsift
