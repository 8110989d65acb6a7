#pragma once

#include <cstdint>
#include <random>

#include "diqkd/bits.hpp"

namespace diqkd {

/// SplitMix64 finalizer; used for stream derivation and keyed schedules.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Explicit random stream. Built on std::mt19937_64, whose output sequence is
/// fixed by the standard; the helpers below avoid the implementation-defined
/// std distributions so that every draw is bit-exact across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Independent stream `index` of a master seed (batch runs, per-party streams).
    static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
        return Rng(mix64(master_seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    Bit bit() { return static_cast<Bit>(next_u64() >> 63); }

    bool bernoulli(double p) { return uniform01() < p; }

    BitVector bits(std::size_t count);

    /// Fresh child stream drawn from this one.
    Rng split() { return Rng(next_u64()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace diqkd
