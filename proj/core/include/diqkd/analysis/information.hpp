#pragma once

#include <vector>

namespace diqkd::analysis {

/// Joint distribution p[k][s] over a finite key alphabet (rows) and side information (columns).
using Joint = std::vector<std::vector<double>>;

/// Rectangular, non-negative, total mass 1 within `tolerance`; throws std::invalid_argument otherwise.
void validate_joint(const Joint& joint, double tolerance = 1e-9);

/// -log2 sum_s max_k p(k, s).
double min_entropy_classical(const Joint& joint);

/// I(K:S) in bits.
double mutual_information_classical(const Joint& joint);

/// sum_{k,s} |p(k,s) - p(k) p(s)|
double l1_from_product(const Joint& joint);

}  // namespace diqkd::analysis
