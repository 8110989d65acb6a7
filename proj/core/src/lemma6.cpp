#include "diqkd/analysis/lemma6.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace diqkd::analysis {

void BitStringDistribution::validate(double tolerance) const {
    if (m == 0 || m > kLemma6MaxBits) throw std::invalid_argument("distribution: m outside [1, 14]");
    if (prob.size() != (std::size_t{1} << m)) throw std::invalid_argument("distribution: size is not 2^m");
    double total = 0.0;
    for (double p : prob) {
        if (!(p >= 0.0)) throw std::invalid_argument("distribution: negative mass");
        total += p;
    }
    if (std::abs(total - 1.0) > tolerance) throw std::invalid_argument("distribution: mass does not sum to 1");
}

BitStringDistribution BitStringDistribution::product(std::size_t m, double p_one) {
    BitStringDistribution d{m, std::vector<double>(std::size_t{1} << m)};
    for (std::size_t s = 0; s < d.prob.size(); ++s) {
        const int ones = std::popcount(static_cast<std::uint32_t>(s));
        d.prob[s] = std::pow(p_one, ones) * std::pow(1.0 - p_one, static_cast<double>(m) - ones);
    }
    return d;
}

BitStringDistribution BitStringDistribution::point(std::size_t m, std::uint32_t string) {
    BitStringDistribution d{m, std::vector<double>(std::size_t{1} << m, 0.0)};
    d.prob.at(string) = 1.0;
    return d;
}

BitStringDistribution BitStringDistribution::random_meeting(std::size_t m, double eta, double eps, Rng& rng) {
    const std::size_t size = std::size_t{1} << m;
    const double limit = eta * static_cast<double>(m);
    std::vector<double> heavy(size, 0.0), light(size, 0.0);
    double heavy_total = 0.0, light_total = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
        // Sparse exponential weights give spiky, far-from-product distributions.
        const double w = rng.bernoulli(0.3) ? -std::log(1.0 - rng.uniform01()) : 0.0;
        heavy[s] = w;
        heavy_total += w;
        if (std::popcount(static_cast<std::uint32_t>(s)) <= limit) {
            const double v = -std::log(1.0 - rng.uniform01());
            light[s] = v;
            light_total += v;
        }
    }
    const double mix = eps + (1.0 - eps) * rng.uniform01();
    BitStringDistribution d{m, std::vector<double>(size, 0.0)};
    for (std::size_t s = 0; s < size; ++s) {
        d.prob[s] = mix * light[s] / light_total + (heavy_total > 0.0 ? (1.0 - mix) * heavy[s] / heavy_total : 0.0);
    }
    if (heavy_total == 0.0)
        for (double& p : d.prob) p /= mix;
    return d;
}

std::string_view to_string(Lemma6Status status) {
    switch (status) {
        case Lemma6Status::Found: return "FOUND";
        case Lemma6Status::Failed: return "FAILED";
        case Lemma6Status::NotApplicable: return "NOT_APPLICABLE";
    }
    return "UNKNOWN";
}

Lemma6Report lemma6_exhaustive_check(const BitStringDistribution& dist, double eta, double beta, double delta,
                                     double eps) {
    dist.validate();
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0) || !(beta > 0.0) || !(eta >= 0.0))
        throw std::invalid_argument("lemma6_exhaustive_check: parameters out of range");
    const std::size_t m = dist.m;
    const std::size_t size = dist.prob.size();

    Lemma6Report report;
    report.tail_bound = std::exp(-2.0 * beta * beta * delta * static_cast<double>(m));
    for (std::size_t s = 0; s < size; ++s)
        if (std::popcount(static_cast<std::uint32_t>(s)) <= eta * static_cast<double>(m)) report.low_weight_mass += dist.prob[s];
    if (!(report.tail_bound < eps / 2.0) || report.low_weight_mass < eps) return report;

    // prefix_mass[i][p]: Pr(X_<i = p), p read from the low i bits.
    std::vector<std::vector<double>> prefix_mass(m + 1);
    prefix_mass[m] = dist.prob;
    for (std::size_t i = m; i-- > 0;) {
        prefix_mass[i].assign(std::size_t{1} << i, 0.0);
        for (std::size_t p = 0; p < prefix_mass[i + 1].size(); ++p) prefix_mass[i][p & ((std::size_t{1} << i) - 1)] += prefix_mass[i + 1][p];
    }
    const double threshold = 1.0 - eta - beta;
    auto good = [&](std::size_t s, std::size_t i) {
        const std::size_t prefix = s & ((std::size_t{1} << i) - 1);
        const double denom = prefix_mass[i][prefix];
        return denom > 0.0 && prefix_mass[i + 1][prefix] / denom >= threshold;  // bit i = 0 keeps the same value
    };

    const double need = (1.0 - delta) * static_cast<double>(m);
    std::vector<double> good_mass(m, 0.0);
    for (std::size_t s = 0; s < size; ++s) {
        if (dist.prob[s] <= 0.0) continue;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) count += good(s, i) ? 1 : 0;
        if (static_cast<double>(count) + 1e-12 < need) continue;
        report.witness.push_back(static_cast<std::uint32_t>(s));
        report.witness_mass += dist.prob[s];
        for (std::size_t i = 0; i < m; ++i)
            if (good(s, i)) good_mass[i] += dist.prob[s];
    }
    report.status = report.witness_mass >= eps / 2.0 ? Lemma6Status::Found : Lemma6Status::Failed;
    if (report.witness_mass > 0.0) {
        for (double g : good_mass)
            if (g / report.witness_mass >= 0.5) ++report.majority_good_indices;
    }
    report.consequence_holds =
        static_cast<double>(report.majority_good_indices) + 1e-12 >= (1.0 - 2.0 * delta) * static_cast<double>(m);
    return report;
}

}  // namespace diqkd::analysis
