#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>

#include "diqkd/devices.hpp"

namespace diqkd::analysis {

/// Maximum quantum satisfaction of the CHSH condition under uniform inputs:
/// (2/3) cos^2(pi/8) + 1/3.
double compute_opt();

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational reduced(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational& other) const { return num * other.den == other.num * den; }
    std::strong_ordering operator<=>(const Rational& other) const { return num * other.den <=> other.num * den; }
};

struct InputPair {
    std::uint8_t x = 0;
    std::uint8_t y = 0;
};

/// Fraction of the given (uniformly weighted) input pairs on which the strategy satisfies the CHSH condition.
Rational satisfaction(const devices::DeterministicStrategy& strategy, std::span<const InputPair> pairs);
Rational satisfaction(const devices::DeterministicStrategy& strategy);

/// Best satisfaction over all 32 deterministic strategies under uniform inputs (exactly 5/6).
Rational classical_opt_bruteforce();

/// Restricted variant: only strategies accepted by `filter`, scored on `pairs`.
Rational classical_opt_bruteforce(const std::function<bool(const devices::DeterministicStrategy&)>& filter,
                                  std::span<const InputPair> pairs);

std::span<const InputPair> all_input_pairs();

}  // namespace diqkd::analysis
