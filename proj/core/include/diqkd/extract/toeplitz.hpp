#pragma once

#include <cstddef>
#include <span>

#include "diqkd/bits.hpp"
#include "diqkd/rng.hpp"

namespace diqkd::extract {

/// Defines the out_len x n Toeplitz matrix T with T(i, j) = bits[i - j + n - 1].
class ToeplitzSeed {
public:
    /// bits.size() must equal n + out_len - 1 (with n, out_len >= 1).
    ToeplitzSeed(BitVector bits, std::size_t n, std::size_t out_len);

    static ToeplitzSeed random(std::size_t n, std::size_t out_len, Rng& rng);

    std::size_t input_length() const { return n_; }
    std::size_t output_length() const { return out_len_; }
    const BitVector& bits() const { return bits_; }

    Bit entry(std::size_t row, std::size_t col) const { return bits_[row + n_ - 1 - col]; }

private:
    BitVector bits_;
    std::size_t n_;
    std::size_t out_len_;
};

/// T x over GF(2). Throws std::invalid_argument when x does not match the seed.
BitVector toeplitz_hash(std::span<const Bit> x, const ToeplitzSeed& seed);

/// Convenience form taking raw seed bits; validates the length n + out_len - 1.
BitVector toeplitz_hash(std::span<const Bit> x, std::span<const Bit> seed_bits, std::size_t out_len);

}  // namespace diqkd::extract
