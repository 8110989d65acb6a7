#include "diqkd/extract/toeplitz.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace diqkd::extract {

namespace {

std::vector<std::uint64_t> pack_words(std::span<const Bit> bits, std::size_t extra_words) {
    std::vector<std::uint64_t> words(bits.size() / 64 + 1 + extra_words, 0);
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j] & 1u) words[j / 64] |= std::uint64_t{1} << (j % 64);
    return words;
}

std::uint64_t window(const std::vector<std::uint64_t>& words, std::size_t offset) {
    const std::size_t q = offset / 64;
    const unsigned r = offset % 64;
    if (r == 0) return words[q];
    return (words[q] >> r) | (words[q + 1] << (64 - r));
}

}  // namespace

ToeplitzSeed::ToeplitzSeed(BitVector bits, std::size_t n, std::size_t out_len)
    : bits_(std::move(bits)), n_(n), out_len_(out_len) {
    if (n == 0 || out_len == 0) throw std::invalid_argument("ToeplitzSeed: dimensions must be positive");
    if (bits_.size() != n + out_len - 1) throw std::invalid_argument("ToeplitzSeed: seed length must be n + l - 1");
}

ToeplitzSeed ToeplitzSeed::random(std::size_t n, std::size_t out_len, Rng& rng) {
    if (n == 0 || out_len == 0) throw std::invalid_argument("ToeplitzSeed: dimensions must be positive");
    return ToeplitzSeed(rng.bits(n + out_len - 1), n, out_len);
}

BitVector toeplitz_hash(std::span<const Bit> x, const ToeplitzSeed& seed) {
    const std::size_t n = seed.input_length();
    const std::size_t out_len = seed.output_length();
    if (x.size() != n) throw std::invalid_argument("toeplitz_hash: input length does not match seed");

    // Row i of T read left to right is the reversed seed starting at out_len-1-i.
    const auto& s = seed.bits();
    BitVector reversed(s.rbegin(), s.rend());
    const auto rev = pack_words(reversed, 1);
    const auto xw = pack_words(x, 0);
    const std::size_t full = n / 64;
    const unsigned tail = n % 64;
    const std::uint64_t tail_mask = tail == 0 ? 0 : (std::uint64_t{1} << tail) - 1;

    BitVector out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) {
        const std::size_t start = out_len - 1 - i;
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < full; ++w) acc ^= window(rev, start + 64 * w) & xw[w];
        if (tail) acc ^= window(rev, start + 64 * full) & xw[full] & tail_mask;
        out[i] = static_cast<Bit>(std::popcount(acc) & 1);
    }
    return out;
}

BitVector toeplitz_hash(std::span<const Bit> x, std::span<const Bit> seed_bits, std::size_t out_len) {
    if (out_len == 0 || x.empty() || seed_bits.size() != x.size() + out_len - 1) {
        throw std::invalid_argument("toeplitz_hash: seed length must be n + l - 1");
    }
    return toeplitz_hash(x, ToeplitzSeed(BitVector(seed_bits.begin(), seed_bits.end()), x.size(), out_len));
}

}  // namespace diqkd::extract
