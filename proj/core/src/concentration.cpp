#include "diqkd/analysis/concentration.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "diqkd/analysis/bounds.hpp"
#include "diqkd/protocol/chsh.hpp"

namespace diqkd::analysis {

double azuma_tail(std::span<const double> c, double t) {
    if (c.empty()) throw std::invalid_argument("azuma_tail: empty bound array");
    if (!(t >= 0.0)) throw std::invalid_argument("azuma_tail: t must be >= 0");
    double sum = 0.0;
    for (double ck : c) {
        if (!(ck > 0.0)) throw std::invalid_argument("azuma_tail: bounds must be positive");
        sum += ck * ck;
    }
    return std::exp(-t * t / (2.0 * sum));
}

double chernoff_subset(double beta, double eta, double gamma, std::size_t m) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("chernoff_subset: beta outside [0, 1]");
    if (!(eta >= 0.0)) throw std::invalid_argument("chernoff_subset: eta must be >= 0");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("chernoff_subset: gamma outside (0, 1]");
    return std::exp(-2.0 * beta * beta * eta * eta * gamma * static_cast<double>(m));
}

PlantedSubsetResult planted_subset_test(std::size_t m, std::size_t subset_size, double beta, double eta,
                                        std::size_t draws, Rng& rng) {
    if (draws == 0) throw std::invalid_argument("planted_subset_test: draws must be positive");
    const double base = 1.0 - compute_opt();
    PlantedSubsetResult result;
    result.planted = static_cast<std::size_t>(std::llround((base + (1.0 + beta) * eta) * static_cast<double>(m)));
    if (result.planted > m) throw std::invalid_argument("planted_subset_test: planted rate exceeds 1");
    result.draws = draws;
    result.bound = chernoff_subset(beta, eta, static_cast<double>(subset_size) / static_cast<double>(m), m);

    std::vector<Bit> z(m, 0);
    for (std::size_t i : protocol::select_bell_rounds(m, result.planted == 0 ? 1 : result.planted, rng))
        z[i] = result.planted == 0 ? 0 : 1;

    const double threshold = (base + eta) * static_cast<double>(subset_size);
    for (std::size_t d = 0; d < draws; ++d) {
        std::size_t violations = 0;
        for (std::size_t i : protocol::select_bell_rounds(m, subset_size, rng)) violations += z[i];
        if (static_cast<double>(violations) <= threshold) ++result.passes;
    }
    result.frequency = static_cast<double>(result.passes) / static_cast<double>(draws);
    result.sigma = std::sqrt(result.frequency * (1.0 - result.frequency) / static_cast<double>(draws));
    return result;
}

}  // namespace diqkd::analysis
