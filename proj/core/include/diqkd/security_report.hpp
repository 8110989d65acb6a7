#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "diqkd/devices.hpp"
#include "diqkd/eve.hpp"
#include "diqkd/protocol/session.hpp"

namespace diqkd::eve {

/// One trial's devices and eavesdropper. `secret` is the planted covert
/// secret, if any, used to score the decoder.
struct Trial {
    std::unique_ptr<devices::DevicePair> pair;
    std::unique_ptr<EveStrategy> eve;
    std::optional<BitVector> secret;
};

/// Builds a fresh trial from the trial's own random stream.
using Scenario = std::function<Trial(Rng&)>;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// rate +/- 3 sqrt(rate (1 - rate) / n), clipped to [0, 1]; n < 2 gives [0, 1].
Interval three_sigma(double rate, std::size_t n);

struct SecurityReport {
    std::size_t sessions = 0;
    std::size_t aborted = 0;
    std::array<std::size_t, 4> abort_reasons{};  // indexed by protocol::AbortReason
    double abort_rate = 0.0;
    Interval abort_interval;

    std::size_t kept = 0;
    double mean_key_len = 0.0;

    std::size_t raw_bits = 0;
    double per_bit_guess_rate = 0.5;
    Interval per_bit_interval;
    double sigma_per_bit = 0.0;

    std::size_t final_bits = 0;
    double final_per_bit_rate = 0.5;
    double exact_guess_rate = 0.0;
    double final_key_guess_advantage = 0.0;
    double sigma_exact = 0.0;
    Interval exact_interval;

    /// Covert decoding, over all sessions and over non-aborted ones.
    std::size_t decoded_bits = 0;
    double decoded_accuracy = 0.0;
    std::size_t decoded_bits_kept = 0;
    double decoded_accuracy_kept = 0.0;

    std::string to_json(int indent = -1) const;
};

/// Runs `trials` sessions of Protocol A (in parallel, stream i of master_seed
/// for trial i) and aggregates Eve's success on non-aborted sessions.
SecurityReport evaluate_security(const Scenario& scenario, const protocol::ProtocolParams& params, std::size_t trials,
                                 std::uint64_t master_seed, std::size_t threads = 0);

/// Trains the transcript eavesdropper's table on `sessions` sessions of the
/// given device model, with Eve scoring herself against the true raw key.
TranscriptEveModel train_transcript_eve(const std::function<std::unique_ptr<devices::DevicePair>(Rng&)>& make_pair,
                                        const protocol::ProtocolParams& params, std::size_t sessions,
                                        std::uint64_t master_seed, std::size_t threads = 0);

}  // namespace diqkd::eve
