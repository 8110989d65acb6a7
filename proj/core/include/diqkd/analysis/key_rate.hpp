#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace diqkd::analysis {

enum class ReconCost { TwoEta, ElevenTenthsEta, Empirical };
enum class KeyBasis { CheckRounds, CheckMinusBell };

std::string_view to_string(ReconCost cost);
std::string_view to_string(KeyBasis basis);
std::optional<ReconCost> parse_recon_cost(std::string_view text);
std::optional<KeyBasis> parse_key_basis(std::string_view text);

/// Free choices in the final key-length expression (kappa - recon - O(log(1/eps)/m)) |basis|.
struct RateModel {
    ReconCost recon_cost = ReconCost::TwoEta;
    /// Constant c in c * log2(1/eps) / m. The default removes 4 log2(1/eps)
    /// bits when the basis holds m/6 rounds.
    double o_term_constant = 24.0;
    KeyBasis basis = KeyBasis::CheckMinusBell;
    /// gamma, used to size C minus B in the per-round calculator.
    double bell_fraction = 0.0;
    /// Disclosed bits per raw-key bit, used by ReconCost::Empirical.
    double empirical_leak_rate = 0.0;

    void validate() const;
};

/// (sqrt2 - 1) / (4 ln 2) - (4 / ln 2) eta, clamped at 0.
double kappa_bound(double eta);

/// Root of the unclamped kappa_bound: (sqrt2 - 1) / 16.
double kappa_zero_crossing();

/// Reconciliation cost per raw-key bit under the model's selector.
double recon_cost(double eta, const RateModel& model);

struct KeyRate {
    double kappa_bound = 0.0;
    double final_len_per_m = 0.0;
};

/// final_len_per_m = max(0, kappa_bound - recon_cost - c log2(1/eps)/m) * (expected basis size)/m,
/// with the basis holding m/6 (|C|) or (1 - gamma) m/6 (|C minus B|) rounds.
KeyRate key_rate(double eta, double eps, std::size_t m, const RateModel& model);

/// Key length in bits for an observed basis size; `kappa` overrides the bound when given.
std::size_t final_key_length(double eta, double eps, std::size_t m, const RateModel& model, std::size_t basis_size,
                             std::optional<double> kappa = std::nullopt);

/// Smallest eta in [lo, hi] at which final_len_per_m reaches zero (bisection to 1e-12).
double final_rate_zero_crossing(double eps, std::size_t m, const RateModel& model, double lo = 0.0, double hi = 0.05);

}  // namespace diqkd::analysis
