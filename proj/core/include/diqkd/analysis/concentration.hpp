#pragma once

#include <cstddef>
#include <span>

#include "diqkd/rng.hpp"

namespace diqkd::analysis {

/// Martingale tail exp(-t^2 / (2 sum c_k^2)).
double azuma_tail(std::span<const double> c, double t);

/// exp(-2 beta^2 eta^2 gamma m): bound on a random gamma m-subset passing the
/// Bell test when the full run violates at rate (1 - opt) + (1 + beta) eta.
double chernoff_subset(double beta, double eta, double gamma, std::size_t m);

struct PlantedSubsetResult {
    std::size_t planted = 0;  // violations placed among the m rounds
    std::size_t draws = 0;
    std::size_t passes = 0;
    double frequency = 0.0;
    double sigma = 0.0;  // binomial standard error of `frequency`
    double bound = 0.0;  // chernoff_subset
};

/// Plants round(((1 - opt) + (1 + beta) eta) m) violations at random rounds,
/// then draws `draws` uniform subsets of `subset_size` rounds and counts how
/// often the subset's violation fraction is at most (1 - opt) + eta.
PlantedSubsetResult planted_subset_test(std::size_t m, std::size_t subset_size, double beta, double eta,
                                        std::size_t draws, Rng& rng);

}  // namespace diqkd::analysis
