#include "diqkd/protocol/channel.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace diqkd::protocol {

namespace {

constexpr std::array<std::pair<MessageKind, std::string_view>, 16> kKindNames{{
    {MessageKind::BellSet, "bell_set"},
    {MessageKind::BellAnnounceAlice, "bell_announce_a"},
    {MessageKind::BellAnnounceBob, "bell_announce_b"},
    {MessageKind::InputsAlice, "inputs_a"},
    {MessageKind::InputsBob, "inputs_b"},
    {MessageKind::ReconPermutationSeed, "recon_perm_seed"},
    {MessageKind::ReconParities, "recon_parities"},
    {MessageKind::ReconMismatch, "recon_mismatch"},
    {MessageKind::ReconBisectParity, "recon_bisect_parity"},
    {MessageKind::ReconBisectChoice, "recon_bisect_choice"},
    {MessageKind::ReconTagSeed, "recon_tag_seed"},
    {MessageKind::ReconTag, "recon_tag"},
    {MessageKind::ReconVerdict, "recon_verdict"},
    {MessageKind::PaToeplitzSeed, "pa_toeplitz_seed"},
    {MessageKind::PaTrevisanSpec, "pa_trevisan_spec"},
    {MessageKind::PaTrevisanSeed, "pa_trevisan_seed"},
}};

}  // namespace

std::string_view to_string(Party party) { return party == Party::Alice ? "A" : "B"; }

std::string_view to_string(MessageKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<MessageKind> parse_message_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

const Message& MessageLog::send(Party from, MessageKind kind, std::vector<std::uint8_t> payload,
                                std::optional<std::size_t> bits) {
    Message msg;
    msg.from = from;
    msg.seq = static_cast<std::uint32_t>(messages_.size());
    msg.kind = kind;
    msg.bits = bits.value_or(payload.size() * 8);
    if (msg.bits > payload.size() * 8) throw std::logic_error("message bit count exceeds payload");
    msg.payload = std::move(payload);
    messages_.push_back(std::move(msg));
    for (const auto& listener : listeners_) listener(messages_.back());
    return messages_.back();
}

std::size_t MessageLog::bits_from(Party from, std::initializer_list<MessageKind> kinds) const {
    std::size_t total = 0;
    for (const auto& msg : messages_) {
        if (msg.from != from) continue;
        for (auto k : kinds)
            if (msg.kind == k) total += msg.bits;
    }
    return total;
}

bool is_recon_leakage(const Message& message) {
    if (message.from != Party::Bob) return false;
    switch (message.kind) {
        case MessageKind::ReconParities:
        case MessageKind::ReconBisectParity:
        case MessageKind::ReconTag:
            return true;
        default:
            return false;
    }
}

void write_frame(std::ostream& out, const std::vector<std::uint8_t>& payload) {
    if (payload.size() > 0xffffffffULL) throw std::length_error("frame payload too large");
    const auto n = static_cast<std::uint32_t>(payload.size());
    const char header[4] = {static_cast<char>(n >> 24), static_cast<char>(n >> 16), static_cast<char>(n >> 8),
                            static_cast<char>(n)};
    out.write(header, 4);
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("write_frame: stream error");
}

std::optional<std::vector<std::uint8_t>> read_frame(std::istream& in) {
    unsigned char header[4];
    in.read(reinterpret_cast<char*>(header), 4);
    if (in.gcount() == 0) return std::nullopt;
    if (in.gcount() != 4) throw std::runtime_error("read_frame: truncated length prefix");
    const std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                            (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
    std::vector<std::uint8_t> payload(n);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::uint32_t>(in.gcount()) != n) throw std::runtime_error("read_frame: truncated payload");
    return payload;
}

}  // namespace diqkd::protocol
