#include <gtest/gtest.h>

#include <cmath>

#include "diqkd/recon.hpp"
#include "oracles.hpp"

using namespace diqkd;
using namespace diqkd::recon;
using protocol::MessageLog;

namespace {

struct Noisy {
    BitVector bob;
    BitVector alice;
};

Noisy noisy_pair(std::size_t n, double q, Rng& rng) {
    Noisy out{rng.bits(n), {}};
    out.alice = out.bob;
    for (auto& bit : out.alice)
        if (rng.uniform01() < q) bit ^= 1;
    return out;
}

std::size_t bob_log_bits(const MessageLog& log) {
    std::size_t total = 0;
    for (const auto& m : log.messages())
        if (m.from == protocol::Party::Bob) total += m.bits;
    return total;
}

}  // namespace

TEST(BinaryEntropy, Values) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.0055), 0.049198, 1e-6);
    EXPECT_NEAR(binary_entropy(0.0055), oracle::entropy(0.0055), 1e-15);
    EXPECT_THROW(binary_entropy(-0.01), std::invalid_argument);
    EXPECT_THROW(binary_entropy(1.01), std::invalid_argument);
}

TEST(BinaryEntropy, SymmetricAndMatchesOracle) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double q = rng.uniform01();
        EXPECT_NEAR(binary_entropy(q), binary_entropy(1 - q), 1e-12);
        EXPECT_NEAR(binary_entropy(q), oracle::entropy(q), 1e-12);
    }
}

TEST(Reconcile, TagLengthAndBlockSize) {
    EXPECT_EQ(tag_length(1e-6), 21u);
    EXPECT_EQ(tag_length(0.25), 3u);
    EXPECT_EQ(first_block_size(0.0055, 10000), 133u);
    EXPECT_EQ(first_block_size(0.1, 10000), 8u);
}

TEST(Reconcile, IdenticalStringsCostOnlyTheTag) {
    Rng rng(2);
    for (double q : {0.0, 0.0055, 0.05}) {
        const auto bob = rng.bits(5000);
        MessageLog log;
        const auto r = reconcile(bob, bob, q, 1e-6, rng, log);
        EXPECT_TRUE(r.success);
        EXPECT_EQ(r.corrected, bob);
        if (q == 0.0) EXPECT_EQ(r.leakage_bits, tag_length(1e-6));
        EXPECT_EQ(r.corrections, 0u);
    }
}

TEST(Reconcile, ZeroEstimateIsVerificationOnly) {
    Rng rng(3);
    auto [bob, alice] = noisy_pair(2000, 0.01, rng);
    MessageLog log;
    const auto r = reconcile(alice, bob, 0.0, 1e-6, rng, log);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.leakage_bits, tag_length(1e-6));
}

TEST(Reconcile, RejectsBadArguments) {
    Rng rng(4);
    const BitVector a(10), b(11);
    EXPECT_THROW(reconcile(a, b, 0.01, 1e-6, rng), std::invalid_argument);
    EXPECT_THROW(reconcile(BitVector{}, BitVector{}, 0.01, 1e-6, rng), std::invalid_argument);
    EXPECT_THROW(reconcile(a, a, 0.3, 1e-6, rng), std::invalid_argument);
    EXPECT_THROW(reconcile(a, a, 0.01, 0.0, rng), std::invalid_argument);
}

TEST(Reconcile, LeakageEqualsBobLogBits) {
    Rng rng(5);
    for (double q : {0.001, 0.0055, 0.02, 0.1}) {
        auto [bob, alice] = noisy_pair(4000, q, rng);
        MessageLog log;
        const auto r = reconcile(alice, bob, q, 1e-6, rng, log);
        EXPECT_EQ(r.leakage_bits, bob_log_bits(log)) << q;
        std::size_t counted = 0;
        for (const auto& m : log.messages())
            if (protocol::is_recon_leakage(m)) counted += m.bits;
        EXPECT_EQ(r.leakage_bits, counted);
    }
}

TEST(Reconcile, SingleFlipReplay) {
    const std::size_t n = 1024;
    Rng data(6);
    const auto bob = data.bits(n);
    auto alice = bob;
    alice[517] ^= 1;
    Rng r1(7), r2(7);
    MessageLog l1, l2;
    const auto a = reconcile(alice, bob, 0.0055, 1e-6, r1, l1);
    const auto b = reconcile(alice, bob, 0.0055, 1e-6, r2, l2);
    EXPECT_TRUE(a.success);
    EXPECT_EQ(a.corrected, bob);
    EXPECT_EQ(a.corrections, 1u);
    EXPECT_EQ(l1.messages(), l2.messages());
    EXPECT_EQ(a.leakage_bits, b.leakage_bits);
    // Pass parities for every pass, one bisection of ceil(log2 block) parities, and the tag.
    std::size_t parities = 0, bisect = 0, tag = 0;
    for (const auto& m : l1.messages()) {
        if (m.kind == protocol::MessageKind::ReconParities) parities += m.bits;
        if (m.kind == protocol::MessageKind::ReconBisectParity) bisect += m.bits;
        if (m.kind == protocol::MessageKind::ReconTag) tag += m.bits;
    }
    const std::size_t block = first_block_size(0.0055, n);
    std::size_t expected_parities = 0;
    for (std::size_t p = 0, size = block; p < a.passes; ++p, size *= 2) expected_parities += (n + size - 1) / size;
    EXPECT_EQ(parities, expected_parities);
    EXPECT_LE(bisect, static_cast<std::size_t>(std::ceil(std::log2(block))));
    EXPECT_GE(bisect, static_cast<std::size_t>(std::ceil(std::log2(n % block))));
    EXPECT_EQ(tag, 21u);
    EXPECT_EQ(a.leakage_bits, parities + bisect + tag);
}

TEST(Reconcile, ExhaustiveSmallStringsUpToTwoErrors) {
    Rng rng(8);
    std::size_t single = 0, single_ok = 0;
    for (std::size_t n : {1u, 2u, 5u, 8u, 16u}) {
        const auto bob = rng.bits(n);
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = i; j <= n; ++j) {
                if (j == i && i != n) continue;
                auto alice = bob;
                if (i < n) alice[i] ^= 1;
                if (j < n && j != i) alice[j] ^= 1;
                const auto r = reconcile(alice, bob, 0.1, 1e-6, rng);
                const bool one_error = j == n || i == n;
                single += one_error ? 1 : 0;
                if (r.success) {
                    single_ok += one_error ? 1 : 0;
                    ASSERT_EQ(r.corrected, bob) << "n=" << n << " i=" << i << " j=" << j;
                }
            }
        }
    }
    EXPECT_EQ(single_ok, single);
}

TEST(Reconcile, SuccessImpliesEqualitySampled) {
    Rng rng(9);
    for (int t = 0; t < 40; ++t) {
        auto [bob, alice] = noisy_pair(3000, 0.02, rng);
        const auto r = reconcile(alice, bob, 0.02, 1e-6, rng);
        if (r.success) ASSERT_EQ(r.corrected, bob);
    }
}

TEST(Reconcile, BudgetAtDeskScale) {
    const double q = 0.0055;
    const std::size_t n = 10000, trials = 100;
    Rng rng(10);
    std::size_t ok = 0;
    double leak = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto [bob, alice] = noisy_pair(n, q, rng);
        const auto r = reconcile(alice, bob, q, 1e-6, rng);
        ok += r.success ? 1 : 0;
        leak += static_cast<double>(r.leakage_bits);
    }
    EXPECT_GE(static_cast<double>(ok) / trials, 0.98);
    EXPECT_LE(leak / trials, 1.3 * oracle::entropy(q) * n + 64);
}

TEST(Reconcile, MeanLeakageMonotoneInErrorRate) {
    Rng rng(11);
    double prev = 0;
    for (double q : {0.001, 0.005, 0.01, 0.02}) {
        double leak = 0;
        for (int t = 0; t < 30; ++t) {
            auto [bob, alice] = noisy_pair(5000, q, rng);
            leak += static_cast<double>(reconcile(alice, bob, 0.0055, 1e-6, rng).leakage_bits);
        }
        leak /= 30;
        EXPECT_GE(leak, prev) << q;
        prev = leak;
    }
}

TEST(Reconcile, FalseAcceptRateBoundedByTagLength) {
    const double eps = 0.25;
    const std::size_t tag = tag_length(eps);
    Rng rng(12);
    std::size_t wrong = 0, accepted = 0;
    for (int t = 0; t < 4000; ++t) {
        auto [bob, alice] = noisy_pair(64, 0.1, rng);
        if (alice == bob) continue;
        const auto r = reconcile(alice, bob, 0.0, eps, rng);
        ++wrong;
        accepted += r.success ? 1 : 0;
    }
    const double bound = std::ldexp(1.0, -static_cast<int>(tag));
    EXPECT_LE(static_cast<double>(accepted) / wrong, bound + 3 * oracle::binomial_sigma(bound, wrong));
}
