#pragma once

// Authenticated public channel between Alice and Bob, modeled as an ordered
// in-memory log. Everything an eavesdropper may read is a Message here.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diqkd::protocol {

enum class Party : std::uint8_t { Alice, Bob };

enum class MessageKind : std::uint8_t {
    BellSet,             // A: 4-byte big-endian round indices
    BellAnnounceAlice,   // A: one byte (x << 1 | a) per Bell round
    BellAnnounceBob,     // B: one byte (y << 1 | b) per Bell round
    InputsAlice,         // A: one byte x per round
    InputsBob,           // B: packed y bits
    ReconPermutationSeed,
    ReconParities,       // B: packed block parities
    ReconMismatch,       // A: packed block mismatch flags
    ReconBisectParity,   // B: packed sub-block parities
    ReconBisectChoice,   // A: packed half choices
    ReconTagSeed,        // A: packed Toeplitz seed bits
    ReconTag,            // B: packed tag bits
    ReconVerdict,        // A: one bit
    PaToeplitzSeed,      // A: u32 output length, packed seed bits
    PaTrevisanSpec,      // A: ExtractorSpec JSON
    PaTrevisanSeed,      // A: packed seed bits
};

std::string_view to_string(Party party);
std::string_view to_string(MessageKind kind);
std::optional<MessageKind> parse_message_kind(std::string_view name);

struct Message {
    Party from = Party::Alice;
    std::uint32_t seq = 0;
    MessageKind kind = MessageKind::BellSet;
    std::vector<std::uint8_t> payload;
    /// Meaningful payload length in bits; trailing pad bits of packed messages are excluded.
    std::size_t bits = 0;

    bool operator==(const Message&) const = default;
};

class MessageLog {
public:
    using Listener = std::function<void(const Message&)>;

    const Message& send(Party from, MessageKind kind, std::vector<std::uint8_t> payload,
                        std::optional<std::size_t> bits = std::nullopt);

    /// Called synchronously on every send, in order.
    void subscribe(Listener listener) { listeners_.push_back(std::move(listener)); }

    const std::vector<Message>& messages() const { return messages_; }

    /// Sum of `bits` over messages from `from` whose kind is in `kinds`.
    std::size_t bits_from(Party from, std::initializer_list<MessageKind> kinds) const;

private:
    std::vector<Message> messages_;
    std::vector<Listener> listeners_;
};

/// Message kinds whose Bob-side content is counted as reconciliation leakage.
bool is_recon_leakage(const Message& message);

// Cross-process framing: each payload is prefixed by its length as a 4-byte
// big-endian integer.
void write_frame(std::ostream& out, const std::vector<std::uint8_t>& payload);
/// Returns nullopt on clean end of stream; throws std::runtime_error on a truncated frame.
std::optional<std::vector<std::uint8_t>> read_frame(std::istream& in);

}  // namespace diqkd::protocol
