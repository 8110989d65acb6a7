#include "diqkd/protocol/session.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diqkd/analysis/estimate.hpp"
#include "diqkd/eve.hpp"
#include "diqkd/extract/toeplitz.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/protocol/chsh.hpp"

namespace diqkd::protocol {

std::string_view to_string(PaBackend backend) { return backend == PaBackend::Toeplitz ? "toeplitz" : "trevisan"; }

std::optional<PaBackend> parse_pa_backend(std::string_view text) {
    if (text == "toeplitz") return PaBackend::Toeplitz;
    if (text == "trevisan") return PaBackend::Trevisan;
    return std::nullopt;
}

double ProtocolParams::gamma() const {
    return (c_gamma / (eta * eta)) * std::log(1.0 / eps) / static_cast<double>(m);
}

std::size_t ProtocolParams::bell_size() const {
    return static_cast<std::size_t>(std::nearbyint(gamma() * static_cast<double>(m)));
}

double ProtocolParams::recon_q() const { return recon_q_est.value_or(std::min(0.25, 1.1 * eta)); }

void ProtocolParams::validate() const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (m > 0xffffffffULL) throw std::invalid_argument("m must fit in 32 bits");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    if (!(c_gamma > 0.0)) throw std::invalid_argument("c_gamma must be positive");
    const double g = gamma();
    if (!(g > 0.0 && g <= 1.0)) throw std::invalid_argument("gamma = " + std::to_string(g) + " outside (0, 1]");
    if (gamma() * static_cast<double>(m) < 1.0 - 1e-9 || bell_size() < 1)
        throw std::invalid_argument("gamma m < 1: Bell set would be empty");
    if (kappa && !(*kappa >= 0.0 && *kappa <= 1.0)) throw std::invalid_argument("kappa must lie in [0, 1]");
    const double q = recon_q();
    if (!(q >= 0.0 && q <= 0.25)) throw std::invalid_argument("recon q_est must lie in [0, 0.25]");
    if (recon.passes < 1) throw std::invalid_argument("recon passes must be >= 1");
    if (!(recon.first_block_factor > 0.0)) throw std::invalid_argument("recon first_block_factor must be positive");
    rate_model.validate();
}

ProtocolParams ProtocolParams::with_bell_size(std::size_t m, double eps, double eta, std::size_t size) {
    ProtocolParams p;
    p.m = m;
    p.eps = eps;
    p.eta = eta;
    p.c_gamma = static_cast<double>(size) * eta * eta / std::log(1.0 / eps);
    return p;
}

std::string_view to_string(AbortReason reason) {
    switch (reason) {
        case AbortReason::None: return "NONE";
        case AbortReason::BellTest: return "BELL_TEST";
        case AbortReason::CheckCount: return "CHECK_COUNT";
        case AbortReason::ReconFail: return "RECON_FAIL";
    }
    return "UNKNOWN";
}

std::optional<AbortReason> parse_abort_reason(std::string_view text) {
    for (auto r : {AbortReason::None, AbortReason::BellTest, AbortReason::CheckCount, AbortReason::ReconFail})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

std::vector<std::size_t> check_rounds(std::span<const std::uint8_t> x, std::span<const Bit> y) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] == 2 && y[i] == 1) c.push_back(i);
    return c;
}

bool check_count_fails(std::size_t check_count, std::size_t m) {
    const double dev = std::abs(static_cast<double>(check_count) - static_cast<double>(m) / 6.0);
    return dev > 10.0 * std::sqrt(static_cast<double>(m));
}

namespace {

std::vector<std::size_t> set_difference(const std::vector<std::size_t>& c, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_difference(c.begin(), c.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class Session {
public:
    Session(devices::DevicePair& pair, const ProtocolParams& params, Rng& rng)
        : pair_(pair), params_(params), alice_inputs_(rng.split()), bob_inputs_(rng.split()), alice_local_(rng.split()) {}

    MessageLog& log() { return log_; }

    void run_b() {
        const std::size_t m = params_.m;
        r_.m = m;
        r_.x.resize(m);
        r_.y.resize(m);
        r_.a.resize(m);
        r_.b.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            r_.x[i] = static_cast<std::uint8_t>(alice_inputs_.uniform_below(3));
            r_.y[i] = bob_inputs_.bit();
            devices::Outputs out;
            try {
                out = pair_.round(i, r_.x[i], r_.y[i]);
            } catch (const std::exception& e) {
                throw SessionError("device failure in round " + std::to_string(i) + ": " + e.what());
            }
            r_.a[i] = out.a & 1u;
            r_.b[i] = out.b & 1u;
        }

        r_.bell_set = select_bell_rounds(m, params_.bell_size(), alice_local_);
        std::vector<std::uint8_t> payload;
        payload.reserve(4 * r_.bell_set.size());
        for (std::size_t i : r_.bell_set) append_u32_be(payload, static_cast<std::uint32_t>(i));
        log_.send(Party::Alice, MessageKind::BellSet, std::move(payload));

        std::vector<std::uint8_t> alice_ann, bob_ann;
        for (std::size_t i : r_.bell_set) {
            alice_ann.push_back(static_cast<std::uint8_t>(r_.x[i] << 1 | r_.a[i]));
            bob_ann.push_back(static_cast<std::uint8_t>(r_.y[i] << 1 | r_.b[i]));
        }
        log_.send(Party::Alice, MessageKind::BellAnnounceAlice, std::move(alice_ann));
        log_.send(Party::Bob, MessageKind::BellAnnounceBob, std::move(bob_ann));

        r_.eta_observed = analysis::estimate_chsh(r_, r_.bell_set).eta_prime;
        if (!params_.disable_bell_test && r_.eta_observed > params_.eta) r_.abort_reason = AbortReason::BellTest;
    }

    void run_a() {
        run_b();
        if (r_.aborted()) return;

        log_.send(Party::Alice, MessageKind::InputsAlice, r_.x);
        log_.send(Party::Bob, MessageKind::InputsBob, pack_bits(r_.y), r_.y.size());

        r_.check_set = check_rounds(r_.x, r_.y);
        if (check_count_fails(r_.check_set.size(), params_.m)) {
            r_.abort_reason = AbortReason::CheckCount;
            return;
        }

        r_.raw_key_positions = set_difference(r_.check_set, r_.bell_set);
        const std::size_t n = r_.raw_key_positions.size();
        if (n == 0) return;
        BitVector alice_raw(n), bob_raw(n);
        for (std::size_t k = 0; k < n; ++k) {
            alice_raw[k] = r_.a[r_.raw_key_positions[k]];
            bob_raw[k] = r_.b[r_.raw_key_positions[k]];
        }

        const auto rec = recon::reconcile(alice_raw, bob_raw, params_.recon_q(), params_.eps, alice_local_, log_,
                                          params_.recon);
        r_.leakage_bits = rec.leakage_bits;
        if (!rec.success) {
            r_.abort_reason = AbortReason::ReconFail;
            return;
        }

        analysis::RateModel model = params_.rate_model;
        model.empirical_leak_rate = static_cast<double>(rec.leakage_bits) / static_cast<double>(n);
        const std::size_t basis = model.basis == analysis::KeyBasis::CheckRounds ? r_.check_set.size() : n;
        const std::size_t len =
            std::min(n, analysis::final_key_length(params_.eta, params_.eps, params_.m, model, basis, params_.kappa));
        if (len == 0) return;

        if (params_.pa_backend == PaBackend::Toeplitz) {
            const auto seed = extract::ToeplitzSeed::random(n, len, alice_local_);
            std::vector<std::uint8_t> payload;
            append_u32_be(payload, static_cast<std::uint32_t>(len));
            const auto packed = pack_bits(seed.bits());
            payload.insert(payload.end(), packed.begin(), packed.end());
            log_.send(Party::Alice, MessageKind::PaToeplitzSeed, std::move(payload), 32 + seed.bits().size());
            r_.alice_key = extract::toeplitz_hash(rec.corrected, seed);
            r_.bob_key = extract::toeplitz_hash(bob_raw, seed);
        } else {
            const auto spec = extract::ExtractorSpec::for_key(n, len, params_.eps);
            const std::string json = spec.to_json();
            log_.send(Party::Alice, MessageKind::PaTrevisanSpec, std::vector<std::uint8_t>(json.begin(), json.end()));
            const BitVector seed = alice_local_.bits(spec.seed_length());
            log_.send(Party::Alice, MessageKind::PaTrevisanSeed, pack_bits(seed), seed.size());
            r_.alice_key = extract::trevisan_extract(rec.corrected, seed, spec);
            r_.bob_key = extract::trevisan_extract(bob_raw, seed, spec);
        }
    }

    SessionResult finish() {
        r_.messages = log_.messages();
        return std::move(r_);
    }

private:
    devices::DevicePair& pair_;
    const ProtocolParams& params_;
    Rng alice_inputs_;
    Rng bob_inputs_;
    Rng alice_local_;
    MessageLog log_;
    SessionResult r_;
};

}  // namespace

SessionResult run_protocol_b(devices::DevicePair& pair, const ProtocolParams& params, Rng& rng) {
    params.validate();
    Session s(pair, params, rng);
    s.run_b();
    return s.finish();
}

SessionResult run_protocol_a(devices::DevicePair& pair, eve::EveStrategy* eve, const ProtocolParams& params, Rng& rng) {
    params.validate();
    Session s(pair, params, rng);
    if (eve != nullptr) s.log().subscribe([eve](const Message& msg) { eve->observe(msg); });
    s.run_a();
    return s.finish();
}

TranscriptAudit audit_transcript(std::span<const Message> messages, std::size_t m, const ProtocolParams& params) {
    TranscriptAudit audit;
    std::vector<std::uint8_t> alice_ann, bob_ann, x;
    BitVector y;
    bool have_set = false;
    for (const auto& msg : messages) {
        switch (msg.kind) {
            case MessageKind::BellSet:
                if (msg.payload.size() % 4 != 0) throw std::invalid_argument("audit: malformed Bell set");
                for (std::size_t k = 0; k < msg.payload.size(); k += 4) audit.bell_set.push_back(read_u32_be(msg.payload, k));
                have_set = true;
                break;
            case MessageKind::BellAnnounceAlice: alice_ann = msg.payload; break;
            case MessageKind::BellAnnounceBob: bob_ann = msg.payload; break;
            case MessageKind::InputsAlice: x = msg.payload; break;
            case MessageKind::InputsBob: y = unpack_bits(msg.payload, msg.bits); break;
            default: break;
        }
    }
    if (!have_set || alice_ann.size() != audit.bell_set.size() || bob_ann.size() != audit.bell_set.size())
        throw std::invalid_argument("audit: Bell-round announcements missing or inconsistent");

    // Rebuild sparse round arrays holding only what was announced.
    std::vector<std::uint8_t> bx(m, 0);
    BitVector by(m, 0), ba(m, 0), bb(m, 0);
    for (std::size_t k = 0; k < audit.bell_set.size(); ++k) {
        const std::size_t i = audit.bell_set[k];
        if (i >= m) throw std::invalid_argument("audit: Bell index out of range");
        bx[i] = alice_ann[k] >> 1;
        ba[i] = alice_ann[k] & 1u;
        by[i] = bob_ann[k] >> 1;
        bb[i] = bob_ann[k] & 1u;
    }
    audit.eta_observed = analysis::estimate_chsh(bx, by, ba, bb, audit.bell_set).eta_prime;
    audit.bell_abort = !params.disable_bell_test && audit.eta_observed > params.eta;

    if (!x.empty() || !y.empty()) {
        if (x.size() != m || y.size() != m) throw std::invalid_argument("audit: input disclosure has wrong length");
        audit.inputs_revealed = true;
        const auto c = check_rounds(x, y);
        audit.check_count = c.size();
        audit.check_count_abort = check_count_fails(c.size(), m);
        audit.raw_key_positions = set_difference(c, audit.bell_set);
    }
    return audit;
}

}  // namespace diqkd::protocol
