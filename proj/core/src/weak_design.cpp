#include "diqkd/extract/weak_design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>

namespace diqkd::extract {

namespace {

bool is_prime(std::size_t v) {
    if (v < 2) return false;
    for (std::size_t f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

using Bitset = std::vector<std::uint64_t>;

Bitset to_bitset(const std::vector<std::uint32_t>& set, std::size_t d) {
    Bitset bits((d + 63) / 64, 0);
    for (auto e : set) bits[e / 64] |= std::uint64_t{1} << (e % 64);
    return bits;
}

std::size_t intersection(const Bitset& lhs, const Bitset& rhs) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < lhs.size(); ++w) c += static_cast<std::size_t>(std::popcount(lhs[w] & rhs[w]));
    return c;
}

std::optional<WeakDesign> polynomial_design(std::size_t t, std::size_t m) {
    std::size_t q = t;
    while (!is_prime(q)) ++q;
    // Lowest degree s with q^(s+1) >= m.
    std::size_t degree = 0;
    long double count = static_cast<long double>(q);
    while (count < static_cast<long double>(m)) {
        ++degree;
        count *= q;
    }
    WeakDesign design;
    design.t = t;
    design.d = t * q;
    design.sets.reserve(m);
    std::vector<std::size_t> coeffs(degree + 1);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t rest = i;
        for (auto& c : coeffs) {
            c = rest % q;
            rest /= q;
        }
        std::vector<std::uint32_t> set(t);
        for (std::size_t a = 0; a < t; ++a) {
            std::size_t value = 0;
            for (std::size_t j = coeffs.size(); j-- > 0;) value = (value * a + coeffs[j]) % q;
            set[a] = static_cast<std::uint32_t>(a * q + value);
        }
        design.sets.push_back(std::move(set));
    }
    return design;
}

std::optional<WeakDesign> greedy_design(std::size_t t, std::size_t m, double r, std::size_t d, Rng& rng) {
    if (d < t) return std::nullopt;
    constexpr int kTriesPerSet = 2000;
    WeakDesign design;
    design.t = t;
    design.d = d;
    std::vector<Bitset> bitsets;
    std::vector<std::uint32_t> pool(d);
    for (std::size_t i = 0; i < m; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kTriesPerSet && !placed; ++attempt) {
            std::iota(pool.begin(), pool.end(), 0u);
            for (std::size_t j = 0; j < t; ++j) {
                const auto pick = j + static_cast<std::size_t>(rng.uniform_below(d - j));
                std::swap(pool[j], pool[pick]);
            }
            std::vector<std::uint32_t> set(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(t));
            std::sort(set.begin(), set.end());
            const Bitset bits = to_bitset(set, d);
            double sum = 0.0;
            for (const auto& prev : bitsets) sum += std::ldexp(1.0, static_cast<int>(intersection(prev, bits)));
            if (sum <= r * static_cast<double>(m)) {
                design.sets.push_back(std::move(set));
                bitsets.push_back(bits);
                placed = true;
            }
        }
        if (!placed) return std::nullopt;
    }
    return design;
}

}  // namespace

DesignCheck verify_weak_design(const WeakDesign& design, double r) {
    DesignCheck check;
    const std::size_t m = design.m();
    check.bound = r * static_cast<double>(m);
    check.sizes_ok = std::all_of(design.sets.begin(), design.sets.end(), [&](const auto& s) {
        if (s.size() != design.t) return false;
        std::vector<std::uint32_t> sorted(s);
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    });
    check.elements_ok = std::all_of(design.sets.begin(), design.sets.end(), [&](const auto& s) {
        return std::all_of(s.begin(), s.end(), [&](std::uint32_t e) { return e < design.d; });
    });
    if (!check.sizes_ok || !check.elements_ok) return check;

    std::vector<Bitset> bitsets;
    bitsets.reserve(m);
    for (const auto& s : design.sets) bitsets.push_back(to_bitset(s, design.d));
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < i; ++j)
            sum += std::ldexp(1.0, static_cast<int>(intersection(bitsets[j], bitsets[i])));
        if (i == 0 || sum > check.worst_sum) {
            check.worst_sum = sum;
            check.worst_index = i;
        }
    }
    check.valid = check.worst_sum <= check.bound;
    return check;
}

std::size_t weak_design_length_bound(std::size_t t, std::size_t m) {
    const auto ratio = static_cast<std::size_t>(std::ceil(static_cast<double>(t) / std::log(2.0)));
    const auto logs = static_cast<std::size_t>(std::ceil(std::log2(4.0 * static_cast<double>(m))));
    return t * ratio * logs;
}

WeakDesign build_weak_design(std::size_t t, std::size_t m, double r_target, std::uint64_t fallback_seed) {
    if (t < 2 || m < 1) throw std::invalid_argument("build_weak_design: need t >= 2 and m >= 1");
    if (!(r_target >= 1.0)) throw std::invalid_argument("build_weak_design: r_target must be >= 1");
    const std::size_t d_bound = weak_design_length_bound(t, m);

    if (m == 1) {
        WeakDesign single{t, t, {std::vector<std::uint32_t>(t)}};
        std::iota(single.sets[0].begin(), single.sets[0].end(), 0u);
        return single;
    }

    if (auto design = polynomial_design(t, m); design && design->d <= d_bound) {
        if (verify_weak_design(*design, r_target).valid) return *design;
    }

    Rng rng(fallback_seed);
    constexpr int kRestarts = 8;
    for (int restart = 0; restart < kRestarts; ++restart) {
        if (auto design = greedy_design(t, m, r_target, d_bound, rng)) {
            if (verify_weak_design(*design, r_target).valid) return *design;
        }
    }
    throw DesignError("build_weak_design: no verified design within the retry budget");
}

}  // namespace diqkd::extract
