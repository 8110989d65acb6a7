#include "diqkd/rng.hpp"

#include <stdexcept>

namespace diqkd {

namespace {
__extension__ typedef unsigned __int128 u128;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Lemire's multiply-shift with rejection.
    u128 product = static_cast<u128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<u128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

BitVector Rng::bits(std::size_t count) {
    BitVector out(count);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = next_u64();
        out[i] = static_cast<Bit>((word >> (i % 64)) & 1u);
    }
    return out;
}

}  // namespace diqkd
