#pragma once

// Exact two-qubit simulator: density matrices, rotated-basis projective
// measurements and depolarizing noise. Basis order is |00>, |01>, |10>, |11>
// with the first qubit on Alice's side.

#include <array>
#include <utility>

#include <Eigen/Dense>

#include "diqkd/bits.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::qsim {

using Density = Eigen::Matrix4cd;

inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kEigenTolerance = 1e-10;

/// Real rotated basis {cos t|0> + sin t|1>, -sin t|0> + cos t|1>}.
/// The angle is stored reduced mod pi into (-pi/2, pi/2]; rotating by pi only
/// flips vector signs, which leaves the projectors unchanged.
class BasisAngle {
public:
    constexpr BasisAngle() = default;
    explicit BasisAngle(double radians);

    double radians() const { return theta_; }

    /// vector(k) is the basis vector for outcome k.
    std::array<double, 2> vector(Bit outcome) const;

    /// The same basis with outcome labels swapped (the angle shifted by pi/2).
    BasisAngle relabeled() const;

private:
    double theta_ = 0.0;
};

class TwoQubitState {
public:
    /// Validates trace, Hermiticity and positivity; throws std::invalid_argument otherwise.
    static TwoQubitState from_density(const Density& rho);

    const Density& rho() const { return rho_; }

private:
    explicit TwoQubitState(Density rho) : rho_(std::move(rho)) {}
    Density rho_;
};

/// table[a][b] = Pr(Alice gets a, Bob gets b).
struct OutcomeTable {
    std::array<std::array<double, 2>, 2> p{};

    double prob_equal() const { return p[0][0] + p[1][1]; }
    double alice_marginal(Bit a) const { return p[a][0] + p[a][1]; }
    double bob_marginal(Bit b) const { return p[0][b] + p[1][b]; }
};

/// Throws std::invalid_argument when rho is not a density matrix within tolerance.
void validate_density(const Density& rho);

TwoQubitState epr_pair();

TwoQubitState fully_mixed();

/// (1 - p) rho + p I/4; p must lie in [0, 1].
TwoQubitState apply_depolarizing(const TwoQubitState& state, double p);

OutcomeTable outcome_distribution(const TwoQubitState& state, BasisAngle alice, BasisAngle bob);

/// Draws Alice's outcome from her marginal with the first uniform and Bob's
/// from the conditional with the second, so `a` never depends on Bob's basis.
std::pair<Bit, Bit> sample_outcome(const OutcomeTable& table, Rng& rng);

std::pair<Bit, Bit> measure_joint(const TwoQubitState& state, BasisAngle alice, BasisAngle bob, Rng& rng);

}  // namespace diqkd::qsim
