#include "diqkd/extract/rs_hadamard.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace diqkd::extract {

void CodeParams::validate() const {
    if (k < 1 || k > kMaxCodeExponent) throw std::invalid_argument("CodeParams: k outside [1, 31]");
    if (n == 0) throw std::invalid_argument("CodeParams: empty message");
    if (degree >= (std::size_t{1} << k)) throw std::invalid_argument("CodeParams: degree must be below 2^k");
    if (n > (degree + 1) * k) throw std::invalid_argument("CodeParams: message longer than (degree + 1) k bits");
}

double CodeParams::relative_distance() const {
    return (1.0 - static_cast<double>(degree) / std::ldexp(1.0, static_cast<int>(k))) / 2.0;
}

CodeParams CodeParams::for_message(std::size_t n, double delta) {
    if (n == 0) throw std::invalid_argument("CodeParams::for_message: empty message");
    if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("CodeParams::for_message: delta outside (0, 1/2]");
    for (unsigned k = 1; k <= kMaxCodeExponent; ++k) {
        CodeParams p{n, k, (n + k - 1) / k - 1};
        if (p.degree >= (std::size_t{1} << k)) continue;
        if (p.relative_distance() >= 0.5 - delta) return p;
    }
    throw std::invalid_argument("CodeParams::for_message: no field size up to 2^31 reaches the requested distance");
}

RsHadamardCode::RsHadamardCode(CodeParams params) : params_(params), field_((params.validate(), params.k)) {}

std::vector<std::uint64_t> RsHadamardCode::coefficients(std::span<const Bit> x) const {
    if (x.size() != params_.n) throw std::invalid_argument("RsHadamardCode: message length mismatch");
    std::vector<std::uint64_t> coeffs(params_.degree + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & 1u) coeffs[i / params_.k] |= std::uint64_t{1} << (i % params_.k);
    return coeffs;
}

Bit RsHadamardCode::bit(std::span<const std::uint64_t> coeffs, std::uint64_t index) const {
    const unsigned k = params_.k;
    if (index >> (2 * k)) throw std::invalid_argument("RsHadamardCode: index out of range");
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t alpha = index & mask;
    const std::uint64_t z = (index >> k) & mask;
    std::uint64_t value = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) value = field_.mul(value, alpha) ^ coeffs[j];
    return static_cast<Bit>(std::popcount(value & z) & 1);
}

BitVector RsHadamardCode::encode(std::span<const Bit> x) const {
    if (params_.k > 12) throw std::invalid_argument("RsHadamardCode::encode: codeword too large to materialize");
    const auto coeffs = coefficients(x);
    const unsigned k = params_.k;
    const std::uint64_t q = std::uint64_t{1} << k;
    std::vector<std::uint64_t> evals(q);
    for (std::uint64_t alpha = 0; alpha < q; ++alpha) {
        std::uint64_t value = 0;
        for (std::size_t j = coeffs.size(); j-- > 0;) value = field_.mul(value, alpha) ^ coeffs[j];
        evals[alpha] = value;
    }
    BitVector out(params_.length());
    for (std::uint64_t z = 0; z < q; ++z)
        for (std::uint64_t alpha = 0; alpha < q; ++alpha)
            out[alpha | (z << k)] = static_cast<Bit>(std::popcount(evals[alpha] & z) & 1);
    return out;
}

Bit code_bit(std::span<const Bit> x, std::span<const Bit> y, const CodeParams& params) {
    const RsHadamardCode code(params);
    if (y.size() != params.log2_length()) throw std::invalid_argument("code_bit: index must have 2k bits");
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < y.size(); ++j) index |= std::uint64_t{y[j] & 1u} << j;
    return code.bit(code.coefficients(x), index);
}

BitVector rs_hadamard_encode(std::span<const Bit> x, const CodeParams& params) {
    return RsHadamardCode(params).encode(x);
}

}  // namespace diqkd::extract
