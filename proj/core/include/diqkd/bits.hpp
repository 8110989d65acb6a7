#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diqkd {

using Bit = std::uint8_t;

/// Unpacked bit string: one element per bit, each 0 or 1.
using BitVector = std::vector<Bit>;

/// Packs bits little-endian within bytes: bit j lands in byte j/8 at position j%8.
std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits);

/// Inverse of pack_bits; `count` bits are read from the front of `bytes`.
BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t count);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts upper or lower case; throws std::invalid_argument on odd length or bad digits.
std::vector<std::uint8_t> from_hex(std::string_view hex);

inline std::string bits_to_hex(std::span<const Bit> bits) { return to_hex(pack_bits(bits)); }

std::size_t hamming_weight(std::span<const Bit> bits);

std::size_t hamming_distance(std::span<const Bit> lhs, std::span<const Bit> rhs);

Bit parity(std::span<const Bit> bits);

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t value);
void append_u64_be(std::vector<std::uint8_t>& out, std::uint64_t value);
std::uint32_t read_u32_be(std::span<const std::uint8_t> bytes, std::size_t offset);
std::uint64_t read_u64_be(std::span<const std::uint8_t> bytes, std::size_t offset);

}  // namespace diqkd
