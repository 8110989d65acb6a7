#include "diqkd/extract/gf2k.hpp"

#include <array>
#include <stdexcept>

namespace diqkd::extract {

namespace {

constexpr std::array<std::uint64_t, 33> kPrimitive{
    0,          0x3,        0x7,        0xB,        0x13,       0x25,       0x43,        0x83,       0x11D,
    0x211,      0x409,      0x805,      0x1053,     0x201B,     0x4443,     0x8003,      0x1100B,    0x20009,
    0x40081,    0x80027,    0x100009,   0x200005,   0x400003,   0x800021,   0x1000087,   0x2000009,  0x4000047,
    0x8000027,  0x10000009, 0x20000005, 0x40800007, 0x80000009, 0x100400007,
};

}  // namespace

std::uint64_t primitive_polynomial(unsigned k) {
    if (k < 1 || k > kMaxFieldExponent) throw std::invalid_argument("primitive_polynomial: k outside [1, 32]");
    return kPrimitive[k];
}

GF2k::GF2k(unsigned k) : k_(k), modulus_(primitive_polynomial(k)), mask_((std::uint64_t{1} << k) - 1) {}

std::uint64_t GF2k::mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t result = 0;
    a &= mask_;
    b &= mask_;
    const std::uint64_t top = std::uint64_t{1} << k_;
    while (b) {
        if (b & 1u) result ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= modulus_;
    }
    return result;
}

std::uint64_t GF2k::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e) {
        if (e & 1u) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

}  // namespace diqkd::extract
