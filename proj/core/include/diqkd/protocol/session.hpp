#pragma once

// Protocol B (rounds + Bell-test estimation) and Protocol A (B followed by
// input disclosure, check-count test, reconciliation and privacy amplification).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "diqkd/analysis/key_rate.hpp"
#include "diqkd/bits.hpp"
#include "diqkd/devices.hpp"
#include "diqkd/protocol/channel.hpp"
#include "diqkd/recon.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::eve {
class EveStrategy;
}

namespace diqkd::protocol {

enum class PaBackend { Toeplitz, Trevisan };

std::string_view to_string(PaBackend backend);
std::optional<PaBackend> parse_pa_backend(std::string_view text);

struct ProtocolParams {
    std::size_t m = 120000;
    double eps = 1e-6;
    double eta = 0.005;
    double c_gamma = 0.04;
    /// Min-entropy rate used for the final key length; the key-rate bound at eta when unset.
    std::optional<double> kappa;
    analysis::RateModel rate_model;
    PaBackend pa_backend = PaBackend::Toeplitz;
    /// Error rate assumed by reconciliation; 1.1 eta (capped at 0.25) when unset.
    std::optional<double> recon_q_est;
    recon::ReconConfig recon;
    /// Test hook: run the rounds and announcements but never abort on the Bell test.
    bool disable_bell_test = false;

    /// (c_gamma / eta^2) ln(1/eps) / m
    double gamma() const;
    /// round(gamma m), ties to even.
    std::size_t bell_size() const;
    double recon_q() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Parameters whose c_gamma makes round(gamma m) equal `size`.
    static ProtocolParams with_bell_size(std::size_t m, double eps, double eta, std::size_t size);
};

enum class AbortReason { None, BellTest, CheckCount, ReconFail };

std::string_view to_string(AbortReason reason);
std::optional<AbortReason> parse_abort_reason(std::string_view text);

/// A device failed mid-session.
class SessionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SessionResult {
    std::size_t m = 0;
    std::vector<std::uint8_t> x;
    BitVector y;
    BitVector a;
    BitVector b;
    std::vector<std::size_t> bell_set;
    std::vector<std::size_t> check_set;
    double eta_observed = 0.0;
    AbortReason abort_reason = AbortReason::None;
    std::vector<Message> messages;
    BitVector alice_key;
    BitVector bob_key;
    std::size_t leakage_bits = 0;
    /// Positions C minus B, in increasing order; the raw key is b restricted to them.
    std::vector<std::size_t> raw_key_positions;

    bool aborted() const { return abort_reason != AbortReason::None; }
};

/// Generation and parameter estimation only; keys stay empty.
SessionResult run_protocol_b(devices::DevicePair& pair, const ProtocolParams& params, Rng& rng);

/// Full key distribution. A non-null `eve` observes every public message as it is sent.
SessionResult run_protocol_a(devices::DevicePair& pair, eve::EveStrategy* eve, const ProtocolParams& params, Rng& rng);

std::vector<std::size_t> check_rounds(std::span<const std::uint8_t> x, std::span<const Bit> y);

/// True when ||C| - m/6| > 10 sqrt(m).
bool check_count_fails(std::size_t check_count, std::size_t m);

/// Decisions recomputed by a third party from the public messages alone.
struct TranscriptAudit {
    std::vector<std::size_t> bell_set;
    double eta_observed = 0.0;
    bool bell_abort = false;
    bool inputs_revealed = false;
    std::size_t check_count = 0;
    bool check_count_abort = false;
    std::vector<std::size_t> raw_key_positions;
};

/// Throws std::invalid_argument on a malformed transcript.
TranscriptAudit audit_transcript(std::span<const Message> messages, std::size_t m, const ProtocolParams& params);

}  // namespace diqkd::protocol
