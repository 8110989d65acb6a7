#pragma once

// Weak (t, r, m, d)-designs: m subsets of {0..d-1}, each of size t, with
// sum_{j<i} 2^{|S_j intersect S_i|} <= r m for every i.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "diqkd/rng.hpp"

namespace diqkd::extract {

struct WeakDesign {
    std::size_t t = 0;
    std::size_t d = 0;
    /// Each set sorted ascending, elements in [0, d).
    std::vector<std::vector<std::uint32_t>> sets;

    std::size_t m() const { return sets.size(); }
    bool operator==(const WeakDesign&) const = default;
};

struct DesignCheck {
    bool valid = false;
    bool sizes_ok = false;
    bool elements_ok = false;
    /// Index i (0-based) with the largest overlap sum, and that sum.
    std::size_t worst_index = 0;
    double worst_sum = 0.0;
    double bound = 0.0;  // r * m
};

/// Direct check of both design clauses.
DesignCheck verify_weak_design(const WeakDesign& design, double r);

/// t * ceil(t / ln 2) * ceil(log2(4m)).
std::size_t weak_design_length_bound(std::size_t t, std::size_t m);

class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Polynomial construction S_p = {(a, p(a)) : a < t} over GF(q), q the least
/// prime >= t, using the lowest polynomial degree that yields m sets; the
/// result is verified at r_target. Falls back to seeded random-greedy search
/// inside the length bound, and throws DesignError rather than return an
/// unverified design.
WeakDesign build_weak_design(std::size_t t, std::size_t m, double r_target, std::uint64_t fallback_seed = 1);

}  // namespace diqkd::extract
