#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "diqkd/extract/gf2k.hpp"
#include "diqkd/extract/rs_hadamard.hpp"
#include "diqkd/extract/toeplitz.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/extract/weak_design.hpp"
#include "oracles.hpp"

using namespace diqkd;
using namespace diqkd::extract;

namespace {

BitVector bits_of(std::uint64_t value, std::size_t n) {
    BitVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (value >> i) & 1u;
    return out;
}

std::uint64_t value_of(const BitVector& bits) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) v |= std::uint64_t{bits[i]} << i;
    return v;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p) continue;
        out.push_back(p);
        while (v % p == 0) v /= p;
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace

TEST(Toeplitz, MatchesNaiveOracle) {
    Rng rng(1);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng.uniform_below(300), l = 1 + rng.uniform_below(80);
        const auto x = rng.bits(n);
        const auto seed = ToeplitzSeed::random(n, l, rng);
        ASSERT_EQ(toeplitz_hash(x, seed), oracle::toeplitz(x, seed.bits(), l));
        ASSERT_EQ(toeplitz_hash(x, seed.bits(), l), oracle::toeplitz(x, seed.bits(), l));
    }
}

TEST(Toeplitz, EntryLayout) {
    const BitVector seed{1, 0, 0, 1, 1};  // n = 3, l = 3
    ToeplitzSeed s(seed, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s.entry(i, j), seed[i - j + 2]);
}

TEST(Toeplitz, ZeroInputAndLinearity) {
    Rng rng(2);
    const auto seed = ToeplitzSeed::random(500, 60, rng);
    EXPECT_EQ(toeplitz_hash(BitVector(500, 0), seed), BitVector(60, 0));
    for (int t = 0; t < 50; ++t) {
        const auto x = rng.bits(500), y = rng.bits(500);
        BitVector xy(500);
        for (std::size_t i = 0; i < 500; ++i) xy[i] = x[i] ^ y[i];
        auto hx = toeplitz_hash(x, seed);
        const auto hy = toeplitz_hash(y, seed);
        for (std::size_t i = 0; i < hx.size(); ++i) hx[i] ^= hy[i];
        ASSERT_EQ(toeplitz_hash(xy, seed), hx);
    }
}

TEST(Toeplitz, RejectsLengthMismatch) {
    Rng rng(3);
    const auto seed = ToeplitzSeed::random(10, 4, rng);
    EXPECT_THROW(toeplitz_hash(BitVector(9), seed), std::invalid_argument);
    EXPECT_THROW(ToeplitzSeed(BitVector(12), 10, 4), std::invalid_argument);
    EXPECT_THROW(toeplitz_hash(BitVector(10), BitVector(12), 4), std::invalid_argument);
}

TEST(Toeplitz, ExhaustiveTwoUniversality) {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t l = 1; l <= 4; ++l) {
            const std::size_t seed_bits = n + l - 1;
            const std::size_t seeds = std::size_t{1} << seed_bits, inputs = std::size_t{1} << n;
            std::vector<std::uint8_t> table(seeds * inputs);
            for (std::size_t s = 0; s < seeds; ++s) {
                const auto sb = bits_of(s, seed_bits);
                for (std::size_t x = 0; x < inputs; ++x)
                    table[s * inputs + x] = static_cast<std::uint8_t>(value_of(toeplitz_hash(bits_of(x, n), sb, l)));
            }
            for (std::size_t x = 0; x < inputs; ++x) {
                for (std::size_t x2 = x + 1; x2 < inputs; ++x2) {
                    std::size_t collisions = 0;
                    for (std::size_t s = 0; s < seeds; ++s) collisions += table[s * inputs + x] == table[s * inputs + x2];
                    ASSERT_EQ(collisions << l, seeds) << "n=" << n << " l=" << l << " x=" << x << " x'=" << x2;
                }
            }
        }
    }
}

TEST(GF2k, MultiplicationMatchesOracle) {
    Rng rng(4);
    for (unsigned k = 1; k <= 32; ++k) {
        GF2k f(k);
        ASSERT_EQ(f.modulus(), primitive_polynomial(k));
        ASSERT_EQ(f.modulus() >> k, 1u);
        for (int t = 0; t < 500; ++t) {
            const auto a = rng.uniform_below(f.order()), b = rng.uniform_below(f.order());
            ASSERT_EQ(f.mul(a, b), oracle::gf_mul(a, b, k, f.modulus())) << k;
        }
    }
    EXPECT_THROW(GF2k(0), std::invalid_argument);
    EXPECT_THROW(GF2k(33), std::invalid_argument);
}

TEST(GF2k, FieldAxiomsSmallExhaustive) {
    for (unsigned k = 1; k <= 5; ++k) {
        GF2k f(k);
        const auto q = f.order();
        for (std::uint64_t a = 0; a < q; ++a) {
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.mul(a, 0), 0u);
            for (std::uint64_t b = 0; b < q; ++b) {
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                for (std::uint64_t c = 0; c < q; ++c) {
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
            if (a) EXPECT_EQ(f.pow(a, q - 1), 1u);
        }
    }
}

TEST(GF2k, TablePolynomialsArePrimitive) {
    for (unsigned k = 1; k <= 32; ++k) {
        GF2k f(k);
        const std::uint64_t order = f.order() - 1;
        ASSERT_EQ(f.pow(2 % f.order() == 0 ? 1 : 2, order), 1u) << k;
        if (k == 1) continue;
        for (auto p : prime_factors(order)) EXPECT_NE(f.pow(2, order / p), 1u) << "k=" << k << " p=" << p;
    }
}

TEST(RsHadamard, CodeBitMatchesFullEncodeExhaustiveSmallK) {
    Rng rng(5);
    for (unsigned k = 1; k <= 4; ++k) {
        for (std::size_t degree = 0; degree < (std::size_t{1} << k); ++degree) {
            const std::size_t n = (degree + 1) * k;
            CodeParams params{n, k, degree};
            const auto modulus = primitive_polynomial(k);
            for (int t = 0; t < 4; ++t) {
                const auto x = rng.bits(n);
                const auto word = oracle::rs_hadamard(x, k, degree, modulus);
                ASSERT_EQ(rs_hadamard_encode(x, params), word);
                for (std::uint64_t y = 0; y < params.length(); ++y)
                    ASSERT_EQ(code_bit(x, bits_of(y, 2 * k), params), word[y]) << k << " " << degree << " " << y;
            }
        }
    }
}

TEST(RsHadamard, CodeBitSampledLargerK) {
    Rng rng(6);
    for (unsigned k : {6u, 9u, 13u, 20u, 31u}) {
        const std::size_t degree = std::min<std::size_t>(40, (std::size_t{1} << k) - 1);
        CodeParams params{degree * k + 1, k, degree};
        const auto modulus = primitive_polynomial(k);
        RsHadamardCode code(params);
        for (int t = 0; t < 5; ++t) {
            const auto x = rng.bits(params.n);
            const auto coef = code.coefficients(x);
            for (int s = 0; s < 200; ++s) {
                const auto alpha = rng.uniform_below(std::uint64_t{1} << k), z = rng.uniform_below(std::uint64_t{1} << k);
                std::uint64_t value = 0, power = 1;
                for (std::size_t j = 0; j <= degree; ++j) {
                    value ^= oracle::gf_mul(coef[j], power, k, modulus);
                    power = oracle::gf_mul(power, alpha, k, modulus);
                }
                const Bit expected = __builtin_popcountll(value & z) & 1;
                const std::uint64_t index = alpha | (z << k);
                ASSERT_EQ(code.bit(coef, index), expected);
                ASSERT_EQ(code_bit(x, bits_of(index, 2 * k), params), expected);
            }
        }
    }
}

TEST(RsHadamard, ZeroMessageAndZeroPlane) {
    CodeParams params{30, 5, 5};
    EXPECT_EQ(rs_hadamard_encode(BitVector(30, 0), params), BitVector(1024, 0));
    Rng rng(7);
    const auto x = rng.bits(30);
    for (std::uint64_t alpha = 0; alpha < 32; ++alpha) EXPECT_EQ(code_bit(x, bits_of(alpha, 10), params), 0);
}

TEST(RsHadamard, DistanceBound) {
    CodeParams params{48, 6, 7};
    EXPECT_DOUBLE_EQ(params.relative_distance(), (1 - 7.0 / 64) / 2);
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto x = rng.bits(48);
        auto x2 = rng.bits(48);
        if (x == x2) x2[0] ^= 1;
        const auto w1 = rs_hadamard_encode(x, params), w2 = rs_hadamard_encode(x2, params);
        const auto dist = hamming_distance(w1, w2);
        // (1 - 7/64)/2 * 4096 = 1824 exactly
        EXPECT_GE(dist, 1824u);
    }
}

TEST(RsHadamard, ParamsValidation) {
    EXPECT_THROW((CodeParams{10, 0, 1}).validate(), std::invalid_argument);
    EXPECT_THROW((CodeParams{10, 32, 1}).validate(), std::invalid_argument);
    EXPECT_THROW((CodeParams{10, 2, 4}).validate(), std::invalid_argument);
    EXPECT_THROW((CodeParams{13, 4, 2}).validate(), std::invalid_argument);
    EXPECT_NO_THROW((CodeParams{12, 4, 2}).validate());
    const auto p = CodeParams::for_message(1024, 0.01);
    EXPECT_GE(p.relative_distance(), 0.5 - 0.01);
    EXPECT_EQ(p.degree, (1024 + p.k - 1) / p.k - 1);
    if (p.k > 1) {
        CodeParams smaller{1024, p.k - 1, (1024 + p.k - 2) / (p.k - 1) - 1};
        EXPECT_TRUE(smaller.degree >= (std::size_t{1} << smaller.k) || smaller.relative_distance() < 0.49);
    }
}

TEST(WeakDesign, LengthBound) {
    EXPECT_EQ(weak_design_length_bound(16, 64), 16u * 24u * 8u);
    EXPECT_EQ(weak_design_length_bound(8, 16), 8u * 12u * 6u);
}

TEST(WeakDesign, BuilderOutputsVerify) {
    for (std::size_t t : {8u, 16u}) {
        for (std::size_t m : {16u, 64u}) {
            const auto d = build_weak_design(t, m, 2.0);
            const auto check = verify_weak_design(d, 2.0);
            EXPECT_TRUE(check.valid) << t << "x" << m << " worst " << check.worst_sum;
            EXPECT_EQ(d.t, t);
            EXPECT_EQ(d.m(), m);
            EXPECT_LE(d.d, weak_design_length_bound(t, m));
        }
    }
}

TEST(WeakDesign, BuilderVariedParameters) {
    for (std::size_t t : {2u, 3u, 5u, 12u, 20u})
        for (std::size_t m : {1u, 2u, 7u, 100u, 500u}) {
            const auto d = build_weak_design(t, m, 2.0);
            ASSERT_TRUE(verify_weak_design(d, 2.0).valid) << t << " " << m;
            ASSERT_LE(d.d, weak_design_length_bound(t, m));
        }
}

TEST(WeakDesign, SingleSet) {
    const auto d = build_weak_design(10, 1, 1.0);
    ASSERT_EQ(d.m(), 1u);
    EXPECT_EQ(d.sets[0].size(), 10u);
    EXPECT_TRUE(verify_weak_design(d, 0.0).valid);
}

TEST(WeakDesign, DisjointFamilyValidAtROne) {
    WeakDesign d{4, 4 * 6, {}};
    for (std::uint32_t i = 0; i < 6; ++i) d.sets.push_back({4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3});
    const auto c = verify_weak_design(d, 1.0);
    EXPECT_TRUE(c.valid);
    EXPECT_DOUBLE_EQ(c.worst_sum, 5.0);
    EXPECT_EQ(c.worst_index, 5u);
}

TEST(WeakDesign, IdenticalFamilyFails) {
    const std::size_t t = 3, m = 4;
    WeakDesign d{t, 3, std::vector<std::vector<std::uint32_t>>(m, {0, 1, 2})};
    const auto c = verify_weak_design(d, 2.0);
    EXPECT_FALSE(c.valid);
    EXPECT_DOUBLE_EQ(c.worst_sum, 3 * 8.0);
    EXPECT_EQ(c.worst_index, 3u);
    // (i-1) 2^t <= r m holds for i = 2 at r = 2 but not for i = 3.
    d.sets.resize(2);
    EXPECT_TRUE(verify_weak_design(d, 4.0).valid);
}

TEST(WeakDesign, MalformedSetsRejected) {
    WeakDesign wrong_size{3, 10, {{0, 1}}};
    EXPECT_FALSE(verify_weak_design(wrong_size, 2).sizes_ok);
    WeakDesign out_of_range{2, 3, {{0, 5}}};
    EXPECT_FALSE(verify_weak_design(out_of_range, 2).elements_ok);
    EXPECT_THROW(build_weak_design(1, 4, 2.0), std::invalid_argument);
    EXPECT_THROW(build_weak_design(4, 0, 2.0), std::invalid_argument);
}

TEST(Trevisan, SingleOutputIsCodeBit) {
    Rng rng(9);
    const auto spec = ExtractorSpec::with_code({40, 5, 7}, 1);
    ASSERT_NO_THROW(spec.validate());
    for (int t = 0; t < 100; ++t) {
        const auto x = rng.bits(40);
        const auto seed = rng.bits(spec.seed_length());
        BitVector y;
        for (auto j : spec.design.sets[0]) y.push_back(seed[j]);
        const auto out = trevisan_extract(x, seed, spec);
        ASSERT_EQ(out.size(), 1u);
        EXPECT_EQ(out[0], code_bit(x, y, spec.code));
    }
}

TEST(Trevisan, OutputBitsAreCodewordBitsAtDesignIndices) {
    Rng rng(10);
    const auto spec = ExtractorSpec::with_code({32, 4, 7}, 24);
    const auto x = rng.bits(32);
    const auto seed = rng.bits(spec.seed_length());
    const auto word = oracle::rs_hadamard(x, 4, 7, primitive_polynomial(4));
    const auto out = trevisan_extract(x, seed, spec);
    ASSERT_EQ(out.size(), 24u);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t index = 0;
        for (std::size_t j = 0; j < spec.design.sets[i].size(); ++j) index |= std::uint64_t{seed[spec.design.sets[i][j]]} << j;
        EXPECT_EQ(seed_index(seed, spec.design.sets[i]), index);
        EXPECT_EQ(out[i], word[index]) << i;
    }
}

TEST(Trevisan, SpecJsonRoundTripAndDeterminism) {
    const auto spec = ExtractorSpec::for_key(600, 40, 1e-3);
    ASSERT_NO_THROW(spec.validate());
    EXPECT_EQ(spec.design.t, 2 * spec.code.k);
    EXPECT_EQ(spec.output_length(), 40u);
    const auto back = ExtractorSpec::from_json(spec.to_json());
    EXPECT_EQ(back, spec);
    Rng rng(11);
    const auto x = rng.bits(600);
    const auto seed = rng.bits(spec.seed_length());
    EXPECT_EQ(trevisan_extract(x, seed, spec), trevisan_extract(x, seed, back));
    EXPECT_THROW(ExtractorSpec::from_json("{}"), std::invalid_argument);
    EXPECT_THROW(ExtractorSpec::from_json("not json"), std::invalid_argument);
}

TEST(Trevisan, DimensionMismatchThrows) {
    const auto spec = ExtractorSpec::with_code({32, 4, 7}, 8);
    Rng rng(12);
    EXPECT_THROW(trevisan_extract(rng.bits(31), rng.bits(spec.seed_length()), spec), std::invalid_argument);
    EXPECT_THROW(trevisan_extract(rng.bits(32), rng.bits(spec.seed_length() + 1), spec), std::invalid_argument);
}

TEST(Trevisan, StructuredSourceOutputLooksUniform) {
    // 1024-bit source, 512 fixed bits, 512 uniform; smaller sample than the acceptance run.
    const std::size_t n = 1024, m_out = 16, samples = 2000;
    const auto spec = ExtractorSpec::with_code({n, 8, 127}, m_out);
    Rng rng(13);
    const auto fixed = rng.bits(n);
    std::vector<double> ones(m_out, 0.0);
    for (std::size_t s = 0; s < samples; ++s) {
        auto x = fixed;
        for (std::size_t i = 0; i < n; i += 2) x[i] = rng.bit();
        const auto out = trevisan_extract(x, rng.bits(spec.seed_length()), spec);
        for (std::size_t i = 0; i < m_out; ++i) ones[i] += out[i];
    }
    for (auto c : ones) EXPECT_NEAR(c / samples, 0.5, 4 * oracle::binomial_sigma(0.5, samples));
}
