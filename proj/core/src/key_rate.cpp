#include "diqkd/analysis/key_rate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diqkd/recon.hpp"

namespace diqkd::analysis {

std::string_view to_string(ReconCost cost) {
    switch (cost) {
        case ReconCost::TwoEta: return "H(2eta)";
        case ReconCost::ElevenTenthsEta: return "H(1.1eta)";
        case ReconCost::Empirical: return "empirical";
    }
    return "unknown";
}

std::string_view to_string(KeyBasis basis) { return basis == KeyBasis::CheckRounds ? "C" : "C-B"; }

std::optional<ReconCost> parse_recon_cost(std::string_view text) {
    if (text == "H(2eta)" || text == "h2eta") return ReconCost::TwoEta;
    if (text == "H(1.1eta)" || text == "h11eta") return ReconCost::ElevenTenthsEta;
    if (text == "empirical") return ReconCost::Empirical;
    return std::nullopt;
}

std::optional<KeyBasis> parse_key_basis(std::string_view text) {
    if (text == "C" || text == "check") return KeyBasis::CheckRounds;
    if (text == "C-B" || text == "check-minus-bell") return KeyBasis::CheckMinusBell;
    return std::nullopt;
}

void RateModel::validate() const {
    if (!(o_term_constant >= 0.0)) throw std::invalid_argument("RateModel: o_term_constant must be >= 0");
    if (!(bell_fraction >= 0.0 && bell_fraction <= 1.0)) throw std::invalid_argument("RateModel: bell_fraction outside [0, 1]");
    if (!(empirical_leak_rate >= 0.0)) throw std::invalid_argument("RateModel: empirical_leak_rate must be >= 0");
}

double kappa_bound(double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("kappa_bound: eta must be >= 0");
    const double ln2 = std::log(2.0);
    return std::max(0.0, (std::sqrt(2.0) - 1.0) / (4.0 * ln2) - (4.0 / ln2) * eta);
}

double kappa_zero_crossing() { return (std::sqrt(2.0) - 1.0) / 16.0; }

double recon_cost(double eta, const RateModel& model) {
    switch (model.recon_cost) {
        case ReconCost::TwoEta: return recon::binary_entropy(std::min(0.5, 2.0 * eta));
        case ReconCost::ElevenTenthsEta: return recon::binary_entropy(std::min(0.5, 1.1 * eta));
        case ReconCost::Empirical: return model.empirical_leak_rate;
    }
    return 0.0;
}

namespace {

void check_ranges(double eta, double eps, std::size_t m) {
    if (!(eta >= 0.0)) throw std::invalid_argument("key_rate: eta must be >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("key_rate: eps outside (0, 1)");
    if (m < 1) throw std::invalid_argument("key_rate: m must be >= 1");
}

double per_basis_rate(double eta, double eps, std::size_t m, const RateModel& model, std::optional<double> kappa) {
    const double k = kappa.value_or(kappa_bound(eta));
    const double o_term = model.o_term_constant * std::log2(1.0 / eps) / static_cast<double>(m);
    return std::max(0.0, k - recon_cost(eta, model) - o_term);
}

}  // namespace

KeyRate key_rate(double eta, double eps, std::size_t m, const RateModel& model) {
    check_ranges(eta, eps, m);
    model.validate();
    const double basis_fraction =
        model.basis == KeyBasis::CheckRounds ? 1.0 / 6.0 : (1.0 - model.bell_fraction) / 6.0;
    return {kappa_bound(eta), per_basis_rate(eta, eps, m, model, std::nullopt) * basis_fraction};
}

std::size_t final_key_length(double eta, double eps, std::size_t m, const RateModel& model, std::size_t basis_size,
                             std::optional<double> kappa) {
    check_ranges(eta, eps, m);
    model.validate();
    const double bits = per_basis_rate(eta, eps, m, model, kappa) * static_cast<double>(basis_size);
    return static_cast<std::size_t>(std::floor(bits));
}

double final_rate_zero_crossing(double eps, std::size_t m, const RateModel& model, double lo, double hi) {
    auto f = [&](double eta) {
        const double o_term = model.o_term_constant * std::log2(1.0 / eps) / static_cast<double>(m);
        const double unclamped = (std::sqrt(2.0) - 1.0) / (4.0 * std::log(2.0)) - (4.0 / std::log(2.0)) * eta;
        return unclamped - recon_cost(eta, model) - o_term;
    };
    if (f(lo) <= 0.0) return lo;
    if (f(hi) > 0.0) throw std::invalid_argument("final_rate_zero_crossing: no sign change in bracket");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace diqkd::analysis
