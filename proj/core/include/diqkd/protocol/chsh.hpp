#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "diqkd/bits.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::protocol {

/// The CHSH condition: a xor b = x and y for x, y in {0,1}; a = b on (2,1);
/// anything on (2,0).
constexpr bool chsh_satisfied(std::uint8_t x, std::uint8_t y, Bit a, Bit b) {
    if (x == 2) return y == 0 || a == b;
    return ((a ^ b) & 1u) == (x & y & 1u);
}

/// Uniformly random size-subset of {0, .., m-1}, returned sorted.
/// Floyd's sampling over a marker array; deterministic for a given stream.
std::vector<std::size_t> select_bell_rounds(std::size_t m, std::size_t size, Rng& rng);

}  // namespace diqkd::protocol
