#include "diqkd/bits.hpp"

#include <stdexcept>

namespace diqkd {

std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] & 1u) out[j / 8] |= static_cast<std::uint8_t>(1u << (j % 8));
    }
    return out;
}

BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t count) {
    if (count > bytes.size() * 8) throw std::invalid_argument("unpack_bits: not enough bytes");
    BitVector out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = (bytes[j / 8] >> (j % 8)) & 1u;
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto byte : bytes) {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0xf]);
    }
    return out;
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd number of digits");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("from_hex: invalid digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::size_t hamming_weight(std::span<const Bit> bits) {
    std::size_t w = 0;
    for (auto b : bits) w += b & 1u;
    return w;
}

std::size_t hamming_distance(std::span<const Bit> lhs, std::span<const Bit> rhs) {
    if (lhs.size() != rhs.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) d += (lhs[i] ^ rhs[i]) & 1u;
    return d;
}

Bit parity(std::span<const Bit> bits) {
    Bit p = 0;
    for (auto b : bits) p ^= b & 1u;
    return p;
}

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t value) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(value >> shift));
}

void append_u64_be(std::vector<std::uint8_t>& out, std::uint64_t value) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(value >> shift));
}

std::uint32_t read_u32_be(std::span<const std::uint8_t> bytes, std::size_t offset) {
    if (offset + 4 > bytes.size()) throw std::out_of_range("read_u32_be: truncated");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | bytes[offset + i];
    return v;
}

std::uint64_t read_u64_be(std::span<const std::uint8_t> bytes, std::size_t offset) {
    if (offset + 8 > bytes.size()) throw std::out_of_range("read_u64_be: truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | bytes[offset + i];
    return v;
}

}  // namespace diqkd
