#include "diqkd/analysis/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "diqkd/protocol/chsh.hpp"

namespace diqkd::analysis {

namespace {

constexpr std::array<InputPair, 6> kAllPairs{{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}}};

}  // namespace

double compute_opt() {
    const double c = std::cos(std::numbers::pi / 8);
    return (2.0 / 3.0) * c * c + 1.0 / 3.0;
}

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::span<const InputPair> all_input_pairs() { return kAllPairs; }

Rational satisfaction(const devices::DeterministicStrategy& s, std::span<const InputPair> pairs) {
    if (pairs.empty()) throw std::invalid_argument("satisfaction: no input pairs");
    std::int64_t ok = 0;
    for (const auto& [x, y] : pairs) ok += protocol::chsh_satisfied(x, y, s.alice[x], s.bob[y]) ? 1 : 0;
    return Rational::reduced(ok, static_cast<std::int64_t>(pairs.size()));
}

Rational satisfaction(const devices::DeterministicStrategy& s) { return satisfaction(s, kAllPairs); }

Rational classical_opt_bruteforce() {
    return classical_opt_bruteforce([](const devices::DeterministicStrategy&) { return true; }, kAllPairs);
}

Rational classical_opt_bruteforce(const std::function<bool(const devices::DeterministicStrategy&)>& filter,
                                  std::span<const InputPair> pairs) {
    bool any = false;
    Rational best{0, 1};
    for (const auto& s : devices::all_deterministic_strategies()) {
        if (!filter(s)) continue;
        const Rational r = satisfaction(s, pairs);
        if (!any || r > best) best = r;
        any = true;
    }
    if (!any) throw std::invalid_argument("classical_opt_bruteforce: filter rejected every strategy");
    return best;
}

}  // namespace diqkd::analysis
