#pragma once

// Eavesdroppers. An EveStrategy is fed public messages one at a time and is
// then asked for guesses; it never receives a device, a SessionResult or any
// private output. A colluding eavesdropper may additionally hold the devices'
// pre-shared tape.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "diqkd/bits.hpp"
#include "diqkd/devices.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/protocol/channel.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::eve {

/// Everything the public channel has revealed so far, decoded.
class PublicView {
public:
    void observe(const protocol::Message& message);

    const std::vector<std::size_t>& bell_set() const { return bell_set_; }
    /// Announced (x, a) and (y, b), aligned with bell_set().
    const std::vector<std::uint8_t>& bell_x() const { return bell_x_; }
    const BitVector& bell_a() const { return bell_a_; }
    const BitVector& bell_y() const { return bell_y_; }
    const BitVector& bell_b() const { return bell_b_; }
    const std::optional<std::vector<std::uint8_t>>& x() const { return x_; }
    const std::optional<BitVector>& y() const { return y_; }

    /// Applies the published privacy-amplification map to a guessed raw key;
    /// nullopt before a seed has been seen or on a length mismatch.
    std::optional<BitVector> amplify(std::span<const Bit> raw) const;

private:
    std::vector<std::size_t> bell_set_;
    std::vector<std::uint8_t> bell_x_;
    BitVector bell_a_, bell_y_, bell_b_;
    std::optional<std::vector<std::uint8_t>> x_;
    std::optional<BitVector> y_;
    std::optional<BitVector> toeplitz_seed_;
    std::size_t toeplitz_out_ = 0;
    std::optional<extract::ExtractorSpec> trevisan_spec_;
    std::optional<BitVector> trevisan_seed_;
};

class EveStrategy {
public:
    virtual ~EveStrategy() = default;

    virtual void observe(const protocol::Message& message) = 0;
    virtual BitVector guess_raw_key(std::span<const std::size_t> positions) = 0;
    virtual BitVector guess_final_key(std::size_t length) = 0;
    /// Covert-channel decoders report the secret they recovered.
    virtual std::optional<BitVector> decoded_secret() const { return std::nullopt; }
};

/// Empirical maximum-likelihood table: raw-key bit value counts keyed by the
/// public majority of Bob's announced outputs on (2,1) Bell rounds
/// (0, 1, or 2 for a tie / no such round).
struct TranscriptEveModel {
    std::array<std::array<std::size_t, 2>, 3> counts{};

    Bit predict(std::uint8_t feature) const { return counts[feature][1] > counts[feature][0] ? 1 : 0; }
    void record(std::uint8_t feature, std::span<const Bit> raw_key);
};

class TranscriptEve final : public EveStrategy {
public:
    explicit TranscriptEve(TranscriptEveModel model = {}) : model_(model) {}

    void observe(const protocol::Message& message) override { view_.observe(message); }
    BitVector guess_raw_key(std::span<const std::size_t> positions) override;
    BitVector guess_final_key(std::size_t length) override;

    std::uint8_t feature() const;
    const PublicView& view() const { return view_; }

private:
    TranscriptEveModel model_;
    PublicView view_;
    BitVector last_raw_;
};

std::unique_ptr<TranscriptEve> transcript_eve(TranscriptEveModel model = {});

/// Colluding decoder for devices::CovertChannelPair: maximum-likelihood
/// decision per secret slot from the Bell-round CHSH violations on the
/// tape's carrier rounds.
class CovertDecoderEve final : public EveStrategy {
public:
    CovertDecoderEve(devices::Tape tape, std::size_t slots, double flip_rate);

    void observe(const protocol::Message& message) override { view_.observe(message); }
    BitVector guess_raw_key(std::span<const std::size_t> positions) override;
    BitVector guess_final_key(std::size_t length) override;
    std::optional<BitVector> decoded_secret() const override;

    /// Slots with at least one observed carrier round.
    std::size_t informed_slots() const;
    /// Bell rounds that are carriers.
    std::size_t observed_carriers() const;

private:
    devices::Tape tape_;
    devices::CovertSchedule schedule_;
    PublicView view_;
    BitVector last_raw_;
};

std::unique_ptr<CovertDecoderEve> covert_decoder_eve(devices::Tape tape, std::size_t slots, double flip_rate);

}  // namespace diqkd::eve
