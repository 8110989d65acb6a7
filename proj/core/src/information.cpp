#include "diqkd/analysis/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diqkd::analysis {

void validate_joint(const Joint& joint, double tolerance) {
    if (joint.empty() || joint.front().empty()) throw std::invalid_argument("joint distribution is empty");
    double total = 0.0;
    for (const auto& row : joint) {
        if (row.size() != joint.front().size()) throw std::invalid_argument("joint distribution is not rectangular");
        for (double p : row) {
            if (!(p >= 0.0)) throw std::invalid_argument("joint distribution has a negative entry");
            total += p;
        }
    }
    if (std::abs(total - 1.0) > tolerance) throw std::invalid_argument("joint distribution does not sum to 1");
}

namespace {

std::pair<std::vector<double>, std::vector<double>> marginals(const Joint& joint) {
    std::vector<double> pk(joint.size(), 0.0), ps(joint.front().size(), 0.0);
    for (std::size_t k = 0; k < joint.size(); ++k) {
        for (std::size_t s = 0; s < ps.size(); ++s) {
            pk[k] += joint[k][s];
            ps[s] += joint[k][s];
        }
    }
    return {pk, ps};
}

}  // namespace

double min_entropy_classical(const Joint& joint) {
    validate_joint(joint);
    double guess = 0.0;
    for (std::size_t s = 0; s < joint.front().size(); ++s) {
        double best = 0.0;
        for (const auto& row : joint) best = std::max(best, row[s]);
        guess += best;
    }
    return -std::log2(guess);
}

double mutual_information_classical(const Joint& joint) {
    validate_joint(joint);
    const auto [pk, ps] = marginals(joint);
    double info = 0.0;
    for (std::size_t k = 0; k < pk.size(); ++k) {
        for (std::size_t s = 0; s < ps.size(); ++s) {
            const double p = joint[k][s];
            if (p > 0.0) info += p * std::log2(p / (pk[k] * ps[s]));
        }
    }
    return std::max(0.0, info);
}

double l1_from_product(const Joint& joint) {
    validate_joint(joint);
    const auto [pk, ps] = marginals(joint);
    double l1 = 0.0;
    for (std::size_t k = 0; k < pk.size(); ++k)
        for (std::size_t s = 0; s < ps.size(); ++s) l1 += std::abs(joint[k][s] - pk[k] * ps[s]);
    return l1;
}

}  // namespace diqkd::analysis
