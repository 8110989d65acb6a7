#include "diqkd/qsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diqkd::qsim {

BasisAngle::BasisAngle(double radians) {
    if (!std::isfinite(radians)) throw std::invalid_argument("BasisAngle: non-finite angle");
    constexpr double pi = std::numbers::pi;
    double t = std::fmod(radians, pi);
    if (t <= -pi / 2) t += pi;
    if (t > pi / 2) t -= pi;
    theta_ = t;
}

std::array<double, 2> BasisAngle::vector(Bit outcome) const {
    const double c = std::cos(theta_);
    const double s = std::sin(theta_);
    if (outcome == 0) return {c, s};
    return {-s, c};
}

BasisAngle BasisAngle::relabeled() const { return BasisAngle(theta_ + std::numbers::pi / 2); }

void validate_density(const Density& rho) {
    if (!rho.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
    const std::complex<double> tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > kStateTolerance || std::abs(tr.imag()) > kStateTolerance) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Density> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kEigenTolerance) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

TwoQubitState TwoQubitState::from_density(const Density& rho) {
    validate_density(rho);
    return TwoQubitState(rho);
}

TwoQubitState epr_pair() {
    Density rho = Density::Zero();
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return TwoQubitState::from_density(rho);
}

TwoQubitState fully_mixed() { return TwoQubitState::from_density(Density::Identity() / 4.0); }

TwoQubitState apply_depolarizing(const TwoQubitState& state, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("apply_depolarizing: p outside [0, 1]");
    const Density rho = (1.0 - p) * state.rho() + p * Density::Identity() / 4.0;
    return TwoQubitState::from_density(rho);
}

OutcomeTable outcome_distribution(const TwoQubitState& state, BasisAngle alice, BasisAngle bob) {
    const Density& rho = state.rho();
    OutcomeTable table;
    for (Bit a = 0; a < 2; ++a) {
        const auto va = alice.vector(a);
        for (Bit b = 0; b < 2; ++b) {
            const auto vb = bob.vector(b);
            Eigen::Vector4cd v(va[0] * vb[0], va[0] * vb[1], va[1] * vb[0], va[1] * vb[1]);
            const double prob = (v.adjoint() * rho * v)(0, 0).real();
            // Round-off can leave tiny negatives for pure states.
            table.p[a][b] = prob < 0.0 ? 0.0 : prob;
        }
    }
    return table;
}

std::pair<Bit, Bit> sample_outcome(const OutcomeTable& table, Rng& rng) {
    const double u_alice = rng.uniform01();
    const double u_bob = rng.uniform01();
    const double p_a0 = table.alice_marginal(0);
    const Bit a = u_alice < p_a0 ? 0 : 1;
    const double p_a = a == 0 ? p_a0 : 1.0 - p_a0;
    const double p_b0_given_a = p_a > 0.0 ? table.p[a][0] / p_a : 0.5;
    const Bit b = u_bob < p_b0_given_a ? 0 : 1;
    return {a, b};
}

std::pair<Bit, Bit> measure_joint(const TwoQubitState& state, BasisAngle alice, BasisAngle bob, Rng& rng) {
    return sample_outcome(outcome_distribution(state, alice, bob), rng);
}

}  // namespace diqkd::qsim
