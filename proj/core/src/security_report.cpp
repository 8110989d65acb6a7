#include "diqkd/security_report.hpp"

#include <cmath>

#include "diqkd/protocol/batch.hpp"
#include "json.hpp"

namespace diqkd::eve {

Interval three_sigma(double rate, std::size_t n) {
    if (n < 2) return {0.0, 1.0};
    const double s = std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
    return {std::max(0.0, rate - 3.0 * s), std::min(1.0, rate + 3.0 * s)};
}

namespace {

struct TrialOutcome {
    protocol::AbortReason reason = protocol::AbortReason::None;
    std::size_t key_len = 0;
    std::size_t raw_bits = 0;
    std::size_t raw_correct = 0;
    std::size_t final_correct = 0;
    bool exact = false;
    double chance = 0.0;  // 2^-key_len
    std::size_t decoded = 0;
    std::size_t decoded_correct = 0;
};

std::size_t matches(const BitVector& lhs, const BitVector& rhs) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < lhs.size() && i < rhs.size(); ++i) n += lhs[i] == rhs[i] ? 1 : 0;
    return n;
}

}  // namespace

SecurityReport evaluate_security(const Scenario& scenario, const protocol::ProtocolParams& params, std::size_t trials,
                                 std::uint64_t master_seed, std::size_t threads) {
    if (trials < 1) throw std::invalid_argument("evaluate_security: trials must be >= 1");
    params.validate();
    const auto outcomes = protocol::run_batch(
        trials, master_seed,
        [&](std::size_t, Rng& rng) {
            Rng setup_rng = rng.split();
            Trial trial = scenario(setup_rng);
            const auto result = protocol::run_protocol_a(*trial.pair, trial.eve.get(), params, rng);
            TrialOutcome out;
            out.reason = result.abort_reason;
            if (trial.eve && trial.secret) {
                if (const auto decoded = trial.eve->decoded_secret()) {
                    out.decoded = trial.secret->size();
                    out.decoded_correct = matches(*decoded, *trial.secret);
                }
            }
            if (result.aborted() || !trial.eve) return out;
            BitVector raw(result.raw_key_positions.size());
            for (std::size_t k = 0; k < raw.size(); ++k) raw[k] = result.b[result.raw_key_positions[k]];
            const auto raw_guess = trial.eve->guess_raw_key(result.raw_key_positions);
            out.raw_bits = raw.size();
            out.raw_correct = matches(raw_guess, raw);
            out.key_len = result.bob_key.size();
            const auto final_guess = trial.eve->guess_final_key(out.key_len);
            out.final_correct = matches(final_guess, result.bob_key);
            out.exact = final_guess == result.bob_key;
            out.chance = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(out.key_len, 2000)));
            return out;
        },
        threads);

    SecurityReport r;
    r.sessions = trials;
    double key_total = 0.0, chance_total = 0.0;
    std::size_t raw_correct = 0, final_correct = 0, exact = 0;
    std::size_t decoded_correct = 0, decoded_correct_kept = 0;
    for (const auto& o : outcomes) {
        ++r.abort_reasons[static_cast<std::size_t>(o.reason)];
        r.decoded_bits += o.decoded;
        decoded_correct += o.decoded_correct;
        if (o.reason != protocol::AbortReason::None) {
            ++r.aborted;
            continue;
        }
        ++r.kept;
        r.decoded_bits_kept += o.decoded;
        decoded_correct_kept += o.decoded_correct;
        key_total += static_cast<double>(o.key_len);
        r.raw_bits += o.raw_bits;
        raw_correct += o.raw_correct;
        r.final_bits += o.key_len;
        final_correct += o.final_correct;
        exact += o.exact ? 1 : 0;
        chance_total += o.chance;
    }
    auto ratio = [](std::size_t num, std::size_t den, double fallback) {
        return den == 0 ? fallback : static_cast<double>(num) / static_cast<double>(den);
    };
    r.abort_rate = ratio(r.aborted, r.sessions, 0.0);
    r.abort_interval = three_sigma(r.abort_rate, r.sessions);
    r.mean_key_len = r.kept == 0 ? 0.0 : key_total / static_cast<double>(r.kept);
    r.per_bit_guess_rate = ratio(raw_correct, r.raw_bits, 0.5);
    r.per_bit_interval = three_sigma(r.per_bit_guess_rate, r.raw_bits);
    r.sigma_per_bit = r.raw_bits == 0 ? 0.0 : std::sqrt(0.25 / static_cast<double>(r.raw_bits));
    r.final_per_bit_rate = ratio(final_correct, r.final_bits, 0.5);
    r.exact_guess_rate = ratio(exact, r.kept, 0.0);
    r.final_key_guess_advantage = r.kept == 0 ? 0.0 : r.exact_guess_rate - chance_total / static_cast<double>(r.kept);
    r.sigma_exact = r.kept == 0 ? 0.0 : std::sqrt(r.exact_guess_rate * (1.0 - r.exact_guess_rate) / static_cast<double>(r.kept));
    r.exact_interval = three_sigma(r.exact_guess_rate, r.kept);
    r.decoded_accuracy = ratio(decoded_correct, r.decoded_bits, 0.0);
    r.decoded_accuracy_kept = ratio(decoded_correct_kept, r.decoded_bits_kept, 0.0);
    return r;
}

std::string SecurityReport::to_json(int indent) const {
    using nlohmann::json;
    auto interval = [](const Interval& i) { return json::array({i.lo, i.hi}); };
    json reasons;
    for (auto reason : {protocol::AbortReason::BellTest, protocol::AbortReason::CheckCount, protocol::AbortReason::ReconFail})
        reasons[std::string(protocol::to_string(reason))] = abort_reasons[static_cast<std::size_t>(reason)];
    json j = {
        {"sessions", sessions},
        {"aborted", aborted},
        {"abort_reasons", reasons},
        {"abort_rate", abort_rate},
        {"kept", kept},
        {"mean_key_len", mean_key_len},
        {"raw_bits", raw_bits},
        {"per_bit_guess_rate", per_bit_guess_rate},
        {"final_bits", final_bits},
        {"final_per_bit_rate", final_per_bit_rate},
        {"exact_guess_rate", exact_guess_rate},
        {"final_key_guess_advantage", final_key_guess_advantage},
        {"decoded_bits", decoded_bits},
        {"decoded_accuracy", decoded_accuracy},
        {"decoded_bits_kept", decoded_bits_kept},
        {"decoded_accuracy_kept", decoded_accuracy_kept},
        {"confidence",
         {{"method", "binomial normal approximation, 3 sigma"},
          {"abort_rate", interval(abort_interval)},
          {"per_bit_guess_rate", interval(per_bit_interval)},
          {"exact_guess_rate", interval(exact_interval)},
          {"n_sessions", sessions},
          {"n_kept", kept},
          {"n_raw_bits", raw_bits}}},
    };
    return j.dump(indent);
}

TranscriptEveModel train_transcript_eve(const std::function<std::unique_ptr<devices::DevicePair>(Rng&)>& make_pair,
                                        const protocol::ProtocolParams& params, std::size_t sessions,
                                        std::uint64_t master_seed, std::size_t threads) {
    struct Sample {
        std::uint8_t feature = 2;
        BitVector raw;
    };
    const auto samples = protocol::run_batch(
        sessions, master_seed,
        [&](std::size_t, Rng& rng) {
            Rng setup_rng = rng.split();
            auto pair = make_pair(setup_rng);
            TranscriptEve eve;
            const auto result = protocol::run_protocol_a(*pair, &eve, params, rng);
            Sample s;
            if (result.aborted()) return s;
            s.feature = eve.feature();
            for (std::size_t i : result.raw_key_positions) s.raw.push_back(result.b[i]);
            return s;
        },
        threads);
    TranscriptEveModel model;
    for (const auto& s : samples) model.record(s.feature, s.raw);
    return model;
}

}  // namespace diqkd::eve
