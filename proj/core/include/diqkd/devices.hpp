#pragma once

// Black-box device pairs. A pair answers one round at a time: Alice's device
// receives x in {0,1,2}, Bob's receives y in {0,1}, each returns one bit.
//
// Classical adversarial pairs are built from two Side objects that each see
// only their own round index, input, output history and copy of the shared
// tape; no code path hands one side the other's input.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "diqkd/bits.hpp"
#include "diqkd/qsim.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::devices {

using Tape = std::vector<std::uint8_t>;

struct Outputs {
    Bit a = 0;
    Bit b = 0;
};

/// Raised by a device that cannot answer; sessions surface it as a session error.
class DeviceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DevicePair {
public:
    virtual ~DevicePair() = default;

    /// Rounds are presented strictly in order; index starts at 0.
    virtual Outputs round(std::size_t index, std::uint8_t x, std::uint8_t y) = 0;

    virtual std::string describe() const = 0;
};

/// Measurement bases per input: alice[x] and bob[y].
struct AngleTable {
    std::array<qsim::BasisAngle, 3> alice;
    std::array<qsim::BasisAngle, 2> bob;

    /// alice = {0, pi/4, -pi/8}, bob = {pi/8, -pi/8}. Attains opt on every constrained pair.
    static AngleTable canonical();

    /// Computational / Hadamard / 3pi/8 for Alice and pi/8 / 3pi/8 for Bob, read
    /// verbatim with no outcome relabeling.
    static AngleTable literal();
};

/// Fresh EPR pair per round, depolarized with probability `noise`, measured
/// with `angles`. Outputs are drawn with qsim::sample_outcome.
class HonestPair final : public DevicePair {
public:
    HonestPair(double noise, Rng rng, AngleTable angles = AngleTable::canonical());

    Outputs round(std::size_t index, std::uint8_t x, std::uint8_t y) override;
    std::string describe() const override;

    const qsim::OutcomeTable& table(std::uint8_t x, std::uint8_t y) const { return tables_.at(x).at(y); }

private:
    double noise_;
    Rng rng_;
    std::array<std::array<qsim::OutcomeTable, 2>, 3> tables_{};
};

std::unique_ptr<HonestPair> honest_pair(double noise, Rng rng);

/// Everything a single side may condition on.
struct SideHistory {
    std::vector<std::uint8_t> inputs;
    BitVector outputs;
};

using SideStrategy = std::function<Bit(std::size_t round, std::uint8_t input, const SideHistory& history,
                                       std::span<const std::uint8_t> tape)>;

class Side {
public:
    Side(SideStrategy strategy, Tape tape, std::uint8_t input_count)
        : strategy_(std::move(strategy)), tape_(std::move(tape)), input_count_(input_count) {}

    Bit respond(std::size_t round, std::uint8_t input);

    const SideHistory& history() const { return history_; }

private:
    SideStrategy strategy_;
    Tape tape_;
    std::uint8_t input_count_;
    SideHistory history_;
};

class ClassicalPair final : public DevicePair {
public:
    ClassicalPair(Side alice, Side bob, std::string description)
        : alice_(std::move(alice)), bob_(std::move(bob)), description_(std::move(description)) {}

    Outputs round(std::size_t index, std::uint8_t x, std::uint8_t y) override;
    std::string describe() const override { return description_; }

private:
    Side alice_;
    Side bob_;
    std::string description_;
};

/// fA over {0,1,2} and fB over {0,1}.
struct DeterministicStrategy {
    std::array<Bit, 3> alice{};
    std::array<Bit, 2> bob{};

    std::string to_string() const;
    /// Parses "aaa:bb", e.g. "000:00".
    static DeterministicStrategy parse(std::string_view text);
};

/// All 2^3 * 2^2 = 32 strategies, enumerated with alice bits as the high bits.
std::vector<DeterministicStrategy> all_deterministic_strategies();

/// The all-zero strategy; satisfies the CHSH condition on 5 of 6 input pairs.
DeterministicStrategy best_deterministic_strategy();

std::unique_ptr<DevicePair> deterministic_pair(DeterministicStrategy strategy);

std::unique_ptr<DevicePair> memory_pair(SideStrategy alice, SideStrategy bob, Tape tape, std::string description);

/// Each round both sides read the same tape-keyed index and play that
/// round's pick among the optimal deterministic strategies.
std::unique_ptr<DevicePair> tape_synchronized_pair(Tape tape);

/// Outputs depend on own past outputs: a_i = parity(a_<i) xor t_i xor [x = 1],
/// b_i = parity(b_<i) xor t_i xor [y = 1], t_i a tape-keyed bit.
std::unique_ptr<DevicePair> history_parity_pair(Tape tape);

/// Tape-keyed schedule deciding which rounds carry a covert bit and which
/// secret slot each carrier round encodes. Shared by the device and by a
/// colluding eavesdropper holding the tape.
class CovertSchedule {
public:
    CovertSchedule(std::span<const std::uint8_t> tape, std::size_t slots, double flip_rate);

    bool carrier(std::size_t round) const;
    std::size_t slot(std::size_t round) const;
    double carrier_probability() const { return carrier_probability_; }
    std::size_t slots() const { return slots_; }

private:
    std::uint64_t key_;
    std::size_t slots_;
    double carrier_probability_;
};

/// Honest noiseless pair whose Bob side flips its output on carrier rounds
/// whose slot holds a 1. Carrier probability is min(1, 2 flip_rate), so a
/// balanced secret yields an average flip rate of flip_rate.
class CovertChannelPair final : public DevicePair {
public:
    CovertChannelPair(BitVector secret, double flip_rate, Tape tape, Rng rng);

    Outputs round(std::size_t index, std::uint8_t x, std::uint8_t y) override;
    std::string describe() const override;

    const Tape& tape() const { return tape_; }
    const BitVector& secret() const { return secret_; }
    double flip_rate() const { return flip_rate_; }

private:
    BitVector secret_;
    double flip_rate_;
    Tape tape_;
    CovertSchedule schedule_;
    HonestPair base_;
};

inline constexpr std::size_t kCovertTapeBytes = 32;

/// Draws a fresh tape and device randomness from `rng`.
std::unique_ptr<CovertChannelPair> covert_channel_pair(BitVector secret, double flip_rate, Rng& rng);

/// Keyed 64-bit value of the tape for a given round and domain label.
std::uint64_t tape_word(std::span<const std::uint8_t> tape, std::size_t round, std::uint64_t domain);

}  // namespace diqkd::devices
