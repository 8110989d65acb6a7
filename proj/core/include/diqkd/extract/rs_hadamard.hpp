#pragma once

// Reed-Solomon over GF(2^k) concatenated with the Hadamard code on k bits.
// A message of n bits is read as coefficients c_0..c_degree (k bits each,
// little-endian, zero padded) of p(X) = sum c_j X^j. Codeword bit at index
// y = alpha | (z << k) is <p(alpha), z> mod 2, so the codeword has 2^(2k) bits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "diqkd/bits.hpp"
#include "diqkd/extract/gf2k.hpp"

namespace diqkd::extract {

inline constexpr unsigned kMaxCodeExponent = 31;

struct CodeParams {
    std::size_t n = 0;
    unsigned k = 0;
    std::size_t degree = 0;

    /// Throws std::invalid_argument unless 1 <= k <= 31, degree < 2^k and n <= (degree + 1) k.
    void validate() const;

    unsigned log2_length() const { return 2 * k; }
    /// Codeword length 2^(2k) in bits.
    std::uint64_t length() const { return std::uint64_t{1} << (2 * k); }
    /// Guaranteed relative distance (1 - degree / 2^k) / 2.
    double relative_distance() const;

    /// Smallest k whose code (degree = ceil(n/k) - 1) has relative distance >= 1/2 - delta.
    /// Throws when no k <= 31 qualifies.
    static CodeParams for_message(std::size_t n, double delta);

    bool operator==(const CodeParams&) const = default;
};

class RsHadamardCode {
public:
    explicit RsHadamardCode(CodeParams params);

    const CodeParams& params() const { return params_; }

    /// RS coefficients of the message x (x.size() must equal params().n).
    std::vector<std::uint64_t> coefficients(std::span<const Bit> x) const;

    /// Codeword bit at `index` < 2^(2k), computed without materializing the codeword.
    Bit bit(std::span<const std::uint64_t> coefficients, std::uint64_t index) const;

    /// The full 2^(2k)-bit codeword; only sensible for small k.
    BitVector encode(std::span<const Bit> x) const;

private:
    CodeParams params_;
    GF2k field_;
};

/// Single-bit access; y holds 2k bits with alpha in y[0..k) and z in y[k..2k).
Bit code_bit(std::span<const Bit> x, std::span<const Bit> y, const CodeParams& params);

BitVector rs_hadamard_encode(std::span<const Bit> x, const CodeParams& params);

}  // namespace diqkd::extract
