#include "diqkd/eve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diqkd/analysis/behavior.hpp"
#include "diqkd/extract/toeplitz.hpp"
#include "diqkd/protocol/chsh.hpp"

namespace diqkd::eve {

using protocol::MessageKind;

void PublicView::observe(const protocol::Message& message) {
    const auto& p = message.payload;
    switch (message.kind) {
        case MessageKind::BellSet:
            bell_set_.clear();
            for (std::size_t k = 0; k + 4 <= p.size(); k += 4) bell_set_.push_back(read_u32_be(p, k));
            break;
        case MessageKind::BellAnnounceAlice:
            bell_x_.clear();
            bell_a_.clear();
            for (auto byte : p) {
                bell_x_.push_back(byte >> 1);
                bell_a_.push_back(byte & 1u);
            }
            break;
        case MessageKind::BellAnnounceBob:
            bell_y_.clear();
            bell_b_.clear();
            for (auto byte : p) {
                bell_y_.push_back(byte >> 1);
                bell_b_.push_back(byte & 1u);
            }
            break;
        case MessageKind::InputsAlice: x_ = p; break;
        case MessageKind::InputsBob: y_ = unpack_bits(p, message.bits); break;
        case MessageKind::PaToeplitzSeed:
            if (p.size() >= 4) {
                toeplitz_out_ = read_u32_be(p, 0);
                toeplitz_seed_ = unpack_bits(std::span(p).subspan(4), message.bits - 32);
            }
            break;
        case MessageKind::PaTrevisanSpec:
            trevisan_spec_ = extract::ExtractorSpec::from_json(std::string(p.begin(), p.end()));
            break;
        case MessageKind::PaTrevisanSeed: trevisan_seed_ = unpack_bits(p, message.bits); break;
        default: break;
    }
}

std::optional<BitVector> PublicView::amplify(std::span<const Bit> raw) const {
    if (toeplitz_seed_) {
        if (toeplitz_seed_->size() + 1 != raw.size() + toeplitz_out_) return std::nullopt;
        return extract::toeplitz_hash(raw, *toeplitz_seed_, toeplitz_out_);
    }
    if (trevisan_spec_ && trevisan_seed_) {
        if (raw.size() != trevisan_spec_->code.n) return std::nullopt;
        return extract::trevisan_extract(raw, *trevisan_seed_, *trevisan_spec_);
    }
    return std::nullopt;
}

namespace {

BitVector final_guess(const PublicView& view, const BitVector& raw, std::size_t length) {
    auto key = view.amplify(raw).value_or(BitVector(length, 0));
    key.resize(length, 0);
    return key;
}

}  // namespace

void TranscriptEveModel::record(std::uint8_t feature, std::span<const Bit> raw_key) {
    for (Bit bit : raw_key) ++counts.at(feature)[bit & 1u];
}

std::uint8_t TranscriptEve::feature() const {
    std::size_t ones = 0, total = 0;
    const auto& xs = view_.bell_x();
    const auto& ys = view_.bell_y();
    for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k) {
        if (xs[k] == 2 && ys[k] == 1) {
            ++total;
            ones += view_.bell_b()[k];
        }
    }
    if (2 * ones > total) return 1;
    if (2 * ones < total) return 0;
    return 2;
}

BitVector TranscriptEve::guess_raw_key(std::span<const std::size_t> positions) {
    last_raw_.assign(positions.size(), model_.predict(feature()));
    return last_raw_;
}

BitVector TranscriptEve::guess_final_key(std::size_t length) { return final_guess(view_, last_raw_, length); }

std::unique_ptr<TranscriptEve> transcript_eve(TranscriptEveModel model) { return std::make_unique<TranscriptEve>(model); }

CovertDecoderEve::CovertDecoderEve(devices::Tape tape, std::size_t slots, double flip_rate)
    : tape_(std::move(tape)), schedule_(tape_, slots, flip_rate) {}

BitVector CovertDecoderEve::guess_raw_key(std::span<const std::size_t> positions) {
    last_raw_.assign(positions.size(), 0);
    return last_raw_;
}

BitVector CovertDecoderEve::guess_final_key(std::size_t length) { return final_guess(view_, last_raw_, length); }

std::optional<BitVector> CovertDecoderEve::decoded_secret() const {
    // Per-input violation probabilities of the noiseless honest devices, with
    // and without Bob's output flipped.
    static const auto table = analysis::BehaviorTable::quantum(0.0);
    auto violation = [](std::uint8_t x, std::uint8_t y, bool flipped) {
        double v = 0.0;
        for (Bit a = 0; a < 2; ++a)
            for (Bit b = 0; b < 2; ++b)
                if (!protocol::chsh_satisfied(x, y, a, flipped ? b ^ 1u : b)) v += table.at(a, b, x, y);
        return std::clamp(v, 1e-6, 1.0 - 1e-6);
    };

    std::vector<double> llr(schedule_.slots(), 0.0);  // log Pr(obs | 1) - log Pr(obs | 0)
    const auto& set = view_.bell_set();
    for (std::size_t k = 0; k < set.size() && k < view_.bell_x().size() && k < view_.bell_y().size(); ++k) {
        if (!schedule_.carrier(set[k])) continue;
        const std::uint8_t x = view_.bell_x()[k], y = view_.bell_y()[k];
        const bool violated = !protocol::chsh_satisfied(x, y, view_.bell_a()[k], view_.bell_b()[k]);
        const double p1 = violation(x, y, true), p0 = violation(x, y, false);
        llr[schedule_.slot(set[k])] += violated ? std::log(p1 / p0) : std::log((1.0 - p1) / (1.0 - p0));
    }
    BitVector secret(llr.size());
    for (std::size_t j = 0; j < llr.size(); ++j) secret[j] = llr[j] > 0.0 ? 1 : 0;
    return secret;
}

std::size_t CovertDecoderEve::observed_carriers() const {
    std::size_t n = 0;
    for (std::size_t i : view_.bell_set()) n += schedule_.carrier(i) ? 1 : 0;
    return n;
}

std::size_t CovertDecoderEve::informed_slots() const {
    std::vector<bool> seen(schedule_.slots(), false);
    for (std::size_t i : view_.bell_set())
        if (schedule_.carrier(i)) seen[schedule_.slot(i)] = true;
    return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

std::unique_ptr<CovertDecoderEve> covert_decoder_eve(devices::Tape tape, std::size_t slots, double flip_rate) {
    return std::make_unique<CovertDecoderEve>(std::move(tape), slots, flip_rate);
}

}  // namespace diqkd::eve
