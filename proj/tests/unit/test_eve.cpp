#include <gtest/gtest.h>

#include <cmath>

#include "diqkd/eve.hpp"
#include "diqkd/protocol/session.hpp"
#include "diqkd/security_report.hpp"
#include "oracles.hpp"

using namespace diqkd;
using namespace diqkd::eve;
using protocol::ProtocolParams;

namespace {

ProtocolParams params_for(std::size_t m, std::size_t bell) {
    auto p = ProtocolParams::with_bell_size(m, 1e-6, 0.005, bell);
    p.kappa = 0.3;
    return p;
}

devices::Tape tape_from(Rng& rng) {
    devices::Tape t(devices::kCovertTapeBytes);
    for (auto& b : t) b = static_cast<std::uint8_t>(rng.next_u64());
    return t;
}

Scenario honest_scenario(double noise, TranscriptEveModel model = {}) {
    return [noise, model](Rng& rng) {
        return Trial{std::make_unique<devices::HonestPair>(noise, rng.split()), transcript_eve(model), std::nullopt};
    };
}

Scenario covert_scenario(double flip_rate, bool matched_tape) {
    return [=](Rng& rng) {
        const auto secret = rng.bits(16);
        auto pair = devices::covert_channel_pair(secret, flip_rate, rng);
        auto tape = matched_tape ? pair->tape() : tape_from(rng);
        return Trial{std::move(pair), covert_decoder_eve(tape, 16, flip_rate), secret};
    };
}

/// Records every message it is shown and forwards it.
class RecordingEve final : public EveStrategy {
public:
    explicit RecordingEve(std::unique_ptr<EveStrategy> inner) : inner_(std::move(inner)) {}
    void observe(const protocol::Message& m) override {
        seen.push_back(m);
        inner_->observe(m);
    }
    BitVector guess_raw_key(std::span<const std::size_t> p) override { return inner_->guess_raw_key(p); }
    BitVector guess_final_key(std::size_t n) override { return inner_->guess_final_key(n); }
    std::vector<protocol::Message> seen;

private:
    std::unique_ptr<EveStrategy> inner_;
};

}  // namespace

TEST(ThreeSigma, Intervals) {
    const auto i = three_sigma(0.5, 100);
    EXPECT_NEAR(i.lo, 0.35, 1e-12);
    EXPECT_NEAR(i.hi, 0.65, 1e-12);
    EXPECT_EQ(three_sigma(0.0, 10).lo, 0.0);
    EXPECT_EQ(three_sigma(1.0, 10).hi, 1.0);
    const auto one = three_sigma(1.0, 1);
    EXPECT_EQ(one.lo, 0.0);
    EXPECT_EQ(one.hi, 1.0);
}

TEST(TranscriptEve, HonestDevicesGiveCoinFlipGuesses) {
    auto params = params_for(20000, 1500);
    params.disable_bell_test = true;
    const auto model = train_transcript_eve([](Rng& rng) { return std::make_unique<devices::HonestPair>(0.0, rng.split()); },
                                            params, 20, 1000, 1);
    const auto r = evaluate_security(honest_scenario(0.0, model), params, 60, 7, 1);
    ASSERT_EQ(r.kept, 60u);
    ASSERT_GT(r.raw_bits, 0u);
    EXPECT_NEAR(r.per_bit_guess_rate, 0.5, 3 * oracle::binomial_sigma(0.5, r.raw_bits));
    EXPECT_LE(r.final_key_guess_advantage, 3 * r.sigma_exact);
    EXPECT_GT(r.mean_key_len, 0);
}

TEST(TranscriptEve, NoisyHonestDevicesStillCoinFlips) {
    auto params = params_for(20000, 1500);
    params.disable_bell_test = true;
    const auto r = evaluate_security(honest_scenario(0.05), params, 40, 8, 1);
    ASSERT_GT(r.raw_bits, 0u);
    EXPECT_NEAR(r.per_bit_guess_rate, 0.5, 3 * oracle::binomial_sigma(0.5, r.raw_bits));
}

TEST(TranscriptEve, DeterministicDevicesFullyPredictableWithoutBellTest) {
    auto params = params_for(20000, 1500);
    params.disable_bell_test = true;
    auto make = [](Rng&) -> std::unique_ptr<devices::DevicePair> {
        return devices::deterministic_pair(devices::DeterministicStrategy::parse("011:11"));
    };
    const auto model = train_transcript_eve(make, params, 5, 2000, 1);
    Scenario scenario = [&](Rng& rng) { return Trial{make(rng), transcript_eve(model), std::nullopt}; };
    const auto r = evaluate_security(scenario, params, 10, 9, 1);
    ASSERT_EQ(r.kept, 10u);
    EXPECT_DOUBLE_EQ(r.per_bit_guess_rate, 1.0);
    if (r.final_bits > 0) EXPECT_DOUBLE_EQ(r.exact_guess_rate, 1.0);
}

TEST(TranscriptEve, DeterministicDevicesAbortWithBellTest) {
    const auto params = params_for(20000, 1500);
    Scenario scenario = [](Rng&) {
        return Trial{devices::deterministic_pair(devices::best_deterministic_strategy()), transcript_eve(), std::nullopt};
    };
    const auto r = evaluate_security(scenario, params, 20, 10, 1);
    EXPECT_EQ(r.aborted, 20u);
    EXPECT_EQ(r.abort_reasons[static_cast<std::size_t>(protocol::AbortReason::BellTest)], 20u);
    EXPECT_EQ(r.kept, 0u);
    EXPECT_EQ(r.raw_bits, 0u);
    EXPECT_DOUBLE_EQ(r.mean_key_len, 0.0);
}

TEST(TranscriptEve, ModelFeatureAndPrediction) {
    TranscriptEveModel model;
    model.record(1, BitVector{1, 1, 0});
    model.record(0, BitVector{0, 0});
    EXPECT_EQ(model.predict(1), 1);
    EXPECT_EQ(model.predict(0), 0);
    EXPECT_EQ(model.predict(2), 0);
    TranscriptEve eve;
    EXPECT_EQ(eve.feature(), 2);
}

TEST(SecurityReport, SingleTrialDegenerateIntervals) {
    auto params = params_for(20000, 1500);
    params.disable_bell_test = true;
    const auto r = evaluate_security(honest_scenario(0.0), params, 1, 11, 1);
    EXPECT_EQ(r.sessions, 1u);
    EXPECT_EQ(r.exact_interval.lo, 0.0);
    EXPECT_EQ(r.exact_interval.hi, 1.0);
    EXPECT_EQ(r.abort_interval.lo, 0.0);
    EXPECT_EQ(r.abort_interval.hi, 1.0);
    EXPECT_NE(r.to_json().find("\"sessions\""), std::string::npos);
}

TEST(SecurityReport, ReproducibleAcrossThreadCounts) {
    const auto params = params_for(12000, 1000);
    const auto a = evaluate_security(honest_scenario(0.002), params, 12, 12, 1);
    const auto b = evaluate_security(honest_scenario(0.002), params, 12, 12, 3);
    EXPECT_EQ(a.to_json(), b.to_json());
    const auto c = evaluate_security(honest_scenario(0.002), params, 12, 13, 1);
    EXPECT_NE(a.to_json(), c.to_json());
}

TEST(SecurityReport, RatesInUnitInterval) {
    const auto params = params_for(12000, 1000);
    const auto r = evaluate_security(honest_scenario(0.05), params, 10, 14, 1);
    for (double v : {r.abort_rate, r.per_bit_guess_rate, r.exact_guess_rate, r.final_per_bit_rate}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(r.aborted + r.kept, r.sessions);
}

TEST(CovertDecoder, MatchedTapeDecodesWhenBellTestDisabled) {
    auto params = params_for(20000, 2000);
    params.disable_bell_test = true;
    const auto r = evaluate_security(covert_scenario(0.05, true), params, 30, 15, 1);
    ASSERT_EQ(r.decoded_bits, 30u * 16u);
    EXPECT_GE(r.decoded_accuracy, 0.9);
}

TEST(CovertDecoder, LargeFlipRateIsCaughtByBellTest) {
    const auto params = params_for(20000, 2000);
    const auto r = evaluate_security(covert_scenario(0.05, true), params, 30, 16, 1);
    EXPECT_GE(r.abort_rate, 0.99);
}

TEST(CovertDecoder, MismatchedTapeIsChance) {
    auto params = params_for(20000, 2000);
    params.disable_bell_test = true;
    const auto r = evaluate_security(covert_scenario(0.05, false), params, 60, 17, 1);
    ASSERT_EQ(r.decoded_bits, 60u * 16u);
    EXPECT_NEAR(r.decoded_accuracy, 0.5, 3 * oracle::binomial_sigma(0.5, r.decoded_bits));
}

TEST(CovertDecoder, CountsCarriersFromPublicBellRounds) {
    const auto params = params_for(20000, 2000);
    Rng rng(19);
    auto pair = devices::covert_channel_pair(BitVector(16, 1), 0.05, rng);
    auto eve = covert_decoder_eve(pair->tape(), 16, 0.05);
    const auto result = protocol::run_protocol_a(*pair, eve.get(), params, rng);
    const devices::CovertSchedule schedule(pair->tape(), 16, 0.05);
    std::size_t carriers = 0;
    for (auto i : result.bell_set) carriers += schedule.carrier(i) ? 1 : 0;
    EXPECT_EQ(eve->observed_carriers(), carriers);
    EXPECT_LE(eve->informed_slots(), 16u);
}

TEST(Secrecy, GuessesArePureFunctionsOfPublicMessages) {
    auto params = params_for(12000, 1000);
    params.disable_bell_test = true;
    TranscriptEveModel model;
    model.record(0, BitVector{1, 1, 1});
    devices::HonestPair pair(0.002, Rng(20));
    auto recorder = std::make_unique<RecordingEve>(transcript_eve(model));
    Rng rng(21);
    auto result = protocol::run_protocol_a(pair, recorder.get(), params, rng);
    ASSERT_FALSE(result.aborted());
    const auto raw_guess = recorder->guess_raw_key(result.raw_key_positions);
    const auto final_guess = recorder->guess_final_key(result.alice_key.size());

    // Poison every private field; the replayed Eve sees only the recorded messages.
    Rng poison(22);
    for (auto& bit : result.a) bit = poison.bit();
    for (auto& bit : result.b) bit = poison.bit();
    result.alice_key.assign(result.alice_key.size(), 1);
    result.bob_key.assign(result.bob_key.size(), 1);

    auto replay = transcript_eve(model);
    for (const auto& m : recorder->seen) replay->observe(m);
    EXPECT_EQ(replay->guess_raw_key(result.raw_key_positions), raw_guess);
    EXPECT_EQ(replay->guess_final_key(result.alice_key.size()), final_guess);
    EXPECT_EQ(recorder->seen, result.messages);
}

TEST(PublicView, DecodesAnnouncementsAndAmplifies) {
    auto params = params_for(12000, 1000);
    params.disable_bell_test = true;
    devices::HonestPair pair(0.0, Rng(23));
    Rng rng(24);
    const auto r = protocol::run_protocol_a(pair, nullptr, params, rng);
    ASSERT_FALSE(r.aborted());
    PublicView view;
    EXPECT_FALSE(view.amplify(BitVector(10)));
    for (const auto& m : r.messages) view.observe(m);
    EXPECT_EQ(view.bell_set(), r.bell_set);
    for (std::size_t k = 0; k < r.bell_set.size(); ++k) {
        const auto i = r.bell_set[k];
        ASSERT_EQ(view.bell_x()[k], r.x[i]);
        ASSERT_EQ(view.bell_a()[k], r.a[i]);
        ASSERT_EQ(view.bell_y()[k], r.y[i]);
        ASSERT_EQ(view.bell_b()[k], r.b[i]);
    }
    ASSERT_TRUE(view.x());
    EXPECT_EQ(*view.x(), r.x);
    EXPECT_EQ(*view.y(), r.y);
    BitVector raw;
    for (auto i : r.raw_key_positions) raw.push_back(r.b[i]);
    const auto amplified = view.amplify(raw);
    ASSERT_TRUE(amplified);
    EXPECT_EQ(*amplified, r.bob_key);
    EXPECT_FALSE(view.amplify(BitVector(raw.size() + 1)));
}
