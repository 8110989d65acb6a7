#pragma once

// Exhaustive oracle for the conditioning lemma: if a distribution over m-bit
// strings puts mass >= eps on strings of weight <= eta m, then a set G of
// mass >= eps/2 exists whose strings have Pr(X_i = 0 | prefix) >= 1 - eta - beta
// on at least (1 - delta) m indices.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "diqkd/rng.hpp"

namespace diqkd::analysis {

/// Explicit distribution over {0,1}^m; prob[s] is the mass of string s with X_i = bit i of s.
struct BitStringDistribution {
    std::size_t m = 0;
    std::vector<double> prob;

    void validate(double tolerance = 1e-9) const;

    static BitStringDistribution product(std::size_t m, double p_one);
    static BitStringDistribution point(std::size_t m, std::uint32_t string);
    /// Random Dirichlet-like weights mixed with a low-weight component so that
    /// Pr(sum X <= eta m) >= eps holds.
    static BitStringDistribution random_meeting(std::size_t m, double eta, double eps, Rng& rng);
};

enum class Lemma6Status { Found, Failed, NotApplicable };

std::string_view to_string(Lemma6Status status);

inline constexpr std::size_t kLemma6MaxBits = 14;

struct Lemma6Report {
    Lemma6Status status = Lemma6Status::NotApplicable;
    double tail_bound = 0.0;       // exp(-2 beta^2 delta m), must be < eps/2
    double low_weight_mass = 0.0;  // Pr(sum X <= eta m), must be >= eps
    std::vector<std::uint32_t> witness;  // G, sorted
    double witness_mass = 0.0;
    /// Indices i with Pr(good at i | G) >= 1/2, and whether they number >= (1 - 2 delta) m.
    std::size_t majority_good_indices = 0;
    bool consequence_holds = false;
};

/// m <= 14. G is taken maximal: every supported string with enough good indices.
Lemma6Report lemma6_exhaustive_check(const BitStringDistribution& dist, double eta, double beta, double delta,
                                     double eps);

}  // namespace diqkd::analysis
