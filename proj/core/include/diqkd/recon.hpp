#pragma once

// Information reconciliation: Bob discloses block parities and bisection
// parities (Cascade-style, with cascading back-correction between passes),
// then a Toeplitz verification tag. Alice corrects her string toward Bob's.
// Permutations come from a seed Alice publishes; only Bob's data-dependent
// bits are counted as leakage.

#include <cstddef>
#include <span>

#include "diqkd/bits.hpp"
#include "diqkd/protocol/channel.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::recon {

/// Base-2 binary entropy; H(0) = H(1) = 0.
double binary_entropy(double q);

struct ReconConfig {
    std::size_t passes = 4;
    /// Pass-1 block size is ceil(first_block_factor / q_est); each later pass doubles it.
    double first_block_factor = 0.73;
};

struct ReconResult {
    BitVector corrected;
    std::size_t leakage_bits = 0;
    bool success = false;
    std::size_t passes = 0;
    std::size_t tag_bits = 0;
    std::size_t corrections = 0;
};

/// ceil(log2(2 / eps)).
std::size_t tag_length(double eps);

std::size_t first_block_size(double q_est, std::size_t n, const ReconConfig& config = {});

/// q_est in [0, 0.25]; q_est = 0 skips the parity passes (verification only).
/// `alice_rng` is Alice's local randomness; the permutation and tag seeds it
/// produces are published on `log`.
ReconResult reconcile(std::span<const Bit> alice, std::span<const Bit> bob, double q_est, double eps, Rng& alice_rng,
                      protocol::MessageLog& log, const ReconConfig& config = {});

ReconResult reconcile(std::span<const Bit> alice, std::span<const Bit> bob, double q_est, double eps, Rng& alice_rng,
                      const ReconConfig& config = {});

}  // namespace diqkd::recon
