#pragma once

#include <cstdint>

namespace diqkd::extract {

inline constexpr unsigned kMaxFieldExponent = 32;

/// Primitive polynomial of degree k (1 <= k <= 32) as a bit mask including the
/// x^k term. Table:
///   k : polynomial                 k : polynomial
///   1 : x + 1                     17 : x^17 + x^3 + 1
///   2 : x^2 + x + 1               18 : x^18 + x^7 + 1
///   3 : x^3 + x + 1               19 : x^19 + x^5 + x^2 + x + 1
///   4 : x^4 + x + 1               20 : x^20 + x^3 + 1
///   5 : x^5 + x^2 + 1             21 : x^21 + x^2 + 1
///   6 : x^6 + x + 1               22 : x^22 + x + 1
///   7 : x^7 + x + 1               23 : x^23 + x^5 + 1
///   8 : x^8 + x^4 + x^3 + x^2 + 1 24 : x^24 + x^7 + x^2 + x + 1
///   9 : x^9 + x^4 + 1             25 : x^25 + x^3 + 1
///  10 : x^10 + x^3 + 1            26 : x^26 + x^6 + x^2 + x + 1
///  11 : x^11 + x^2 + 1            27 : x^27 + x^5 + x^2 + x + 1
///  12 : x^12 + x^6 + x^4 + x + 1  28 : x^28 + x^3 + 1
///  13 : x^13 + x^4 + x^3 + x + 1  29 : x^29 + x^2 + 1
///  14 : x^14 + x^10 + x^6 + x + 1 30 : x^30 + x^23 + x^2 + x + 1
///  15 : x^15 + x + 1              31 : x^31 + x^3 + 1
///  16 : x^16 + x^12 + x^3 + x + 1 32 : x^32 + x^22 + x^2 + x + 1
std::uint64_t primitive_polynomial(unsigned k);

/// GF(2^k) with elements as k-bit integers in the polynomial basis.
class GF2k {
public:
    explicit GF2k(unsigned k);

    unsigned exponent() const { return k_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t order() const { return std::uint64_t{1} << k_; }

    static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

private:
    unsigned k_;
    std::uint64_t modulus_;
    std::uint64_t mask_;
};

}  // namespace diqkd::extract
