#include "diqkd/devices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace diqkd::devices {

namespace {

constexpr double kPi = std::numbers::pi;

void check_inputs(std::uint8_t x, std::uint8_t y) {
    if (x > 2 || y > 1) throw DeviceError("device input out of range");
}

std::uint64_t tape_key(std::span<const std::uint8_t> tape) {
    std::uint64_t key = 0x243f6a8885a308d3ULL;
    for (auto byte : tape) key = mix64(key ^ byte);
    return key;
}

bool chsh_ok(const DeterministicStrategy& s, std::uint8_t x, std::uint8_t y) {
    const Bit a = s.alice[x];
    const Bit b = s.bob[y];
    if (x == 2) return y == 0 || a == b;
    return (a ^ b) == (x & y);
}

std::vector<DeterministicStrategy> optimal_deterministic_strategies() {
    std::vector<DeterministicStrategy> out;
    for (const auto& s : all_deterministic_strategies()) {
        int satisfied = 0;
        for (std::uint8_t x = 0; x < 3; ++x)
            for (std::uint8_t y = 0; y < 2; ++y) satisfied += chsh_ok(s, x, y) ? 1 : 0;
        if (satisfied == 5) out.push_back(s);
    }
    return out;
}

}  // namespace

AngleTable AngleTable::canonical() {
    return AngleTable{{qsim::BasisAngle(0.0), qsim::BasisAngle(kPi / 4), qsim::BasisAngle(-kPi / 8)},
                      {qsim::BasisAngle(kPi / 8), qsim::BasisAngle(-kPi / 8)}};
}

AngleTable AngleTable::literal() {
    return AngleTable{{qsim::BasisAngle(0.0), qsim::BasisAngle(kPi / 4), qsim::BasisAngle(3 * kPi / 8)},
                      {qsim::BasisAngle(kPi / 8), qsim::BasisAngle(3 * kPi / 8)}};
}

HonestPair::HonestPair(double noise, Rng rng, AngleTable angles) : noise_(noise), rng_(std::move(rng)) {
    if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("honest_pair: noise outside [0, 1]");
    // Every round starts from a fresh state, so the six outcome tables are fixed.
    const auto state = qsim::apply_depolarizing(qsim::epr_pair(), noise);
    for (std::uint8_t x = 0; x < 3; ++x)
        for (std::uint8_t y = 0; y < 2; ++y)
            tables_[x][y] = qsim::outcome_distribution(state, angles.alice[x], angles.bob[y]);
}

Outputs HonestPair::round(std::size_t, std::uint8_t x, std::uint8_t y) {
    check_inputs(x, y);
    const auto [a, b] = qsim::sample_outcome(tables_[x][y], rng_);
    return {a, b};
}

std::string HonestPair::describe() const {
    std::ostringstream os;
    os << "honest(noise=" << noise_ << ")";
    return os.str();
}

std::unique_ptr<HonestPair> honest_pair(double noise, Rng rng) {
    return std::make_unique<HonestPair>(noise, std::move(rng));
}

Bit Side::respond(std::size_t round, std::uint8_t input) {
    if (input >= input_count_) throw DeviceError("device input out of range");
    const Bit out = strategy_(round, input, history_, tape_) & 1u;
    history_.inputs.push_back(input);
    history_.outputs.push_back(out);
    return out;
}

Outputs ClassicalPair::round(std::size_t index, std::uint8_t x, std::uint8_t y) {
    check_inputs(x, y);
    return {alice_.respond(index, x), bob_.respond(index, y)};
}

std::string DeterministicStrategy::to_string() const {
    std::string s;
    for (auto a : alice) s.push_back(static_cast<char>('0' + a));
    s.push_back(':');
    for (auto b : bob) s.push_back(static_cast<char>('0' + b));
    return s;
}

DeterministicStrategy DeterministicStrategy::parse(std::string_view text) {
    if (text.size() != 6 || text[3] != ':') throw std::invalid_argument("deterministic strategy must look like 010:10");
    DeterministicStrategy s;
    auto bit = [&](char c) -> Bit {
        if (c != '0' && c != '1') throw std::invalid_argument("deterministic strategy digits must be 0 or 1");
        return static_cast<Bit>(c - '0');
    };
    for (int i = 0; i < 3; ++i) s.alice[i] = bit(text[i]);
    for (int i = 0; i < 2; ++i) s.bob[i] = bit(text[4 + i]);
    return s;
}

std::vector<DeterministicStrategy> all_deterministic_strategies() {
    std::vector<DeterministicStrategy> out;
    out.reserve(32);
    for (unsigned code = 0; code < 32; ++code) {
        DeterministicStrategy s;
        for (int i = 0; i < 3; ++i) s.alice[i] = static_cast<Bit>((code >> (4 - i)) & 1u);
        for (int i = 0; i < 2; ++i) s.bob[i] = static_cast<Bit>((code >> (1 - i)) & 1u);
        out.push_back(s);
    }
    return out;
}

DeterministicStrategy best_deterministic_strategy() { return DeterministicStrategy{}; }

std::unique_ptr<DevicePair> deterministic_pair(DeterministicStrategy strategy) {
    auto fa = strategy.alice;
    auto fb = strategy.bob;
    Side alice([fa](std::size_t, std::uint8_t x, const SideHistory&, std::span<const std::uint8_t>) { return fa[x]; },
               {}, 3);
    Side bob([fb](std::size_t, std::uint8_t y, const SideHistory&, std::span<const std::uint8_t>) { return fb[y]; },
             {}, 2);
    return std::make_unique<ClassicalPair>(std::move(alice), std::move(bob),
                                           "deterministic(" + strategy.to_string() + ")");
}

std::unique_ptr<DevicePair> memory_pair(SideStrategy alice, SideStrategy bob, Tape tape, std::string description) {
    return std::make_unique<ClassicalPair>(Side(std::move(alice), tape, 3), Side(std::move(bob), tape, 2),
                                           std::move(description));
}

std::uint64_t tape_word(std::span<const std::uint8_t> tape, std::size_t round, std::uint64_t domain) {
    return mix64(tape_key(tape) ^ mix64(static_cast<std::uint64_t>(round) * 0x9e3779b97f4a7c15ULL ^ domain));
}

std::unique_ptr<DevicePair> tape_synchronized_pair(Tape tape) {
    auto optimal = std::make_shared<const std::vector<DeterministicStrategy>>(optimal_deterministic_strategies());
    auto pick = [optimal](std::size_t round, std::span<const std::uint8_t> t) -> const DeterministicStrategy& {
        return (*optimal)[tape_word(t, round, 1) % optimal->size()];
    };
    SideStrategy alice = [pick](std::size_t round, std::uint8_t x, const SideHistory&,
                                std::span<const std::uint8_t> t) { return pick(round, t).alice[x]; };
    SideStrategy bob = [pick](std::size_t round, std::uint8_t y, const SideHistory&,
                              std::span<const std::uint8_t> t) { return pick(round, t).bob[y]; };
    return memory_pair(std::move(alice), std::move(bob), std::move(tape), "memory(tape-synchronized)");
}

std::unique_ptr<DevicePair> history_parity_pair(Tape tape) {
    auto side = [](std::uint8_t input, std::size_t round, const SideHistory& h, std::span<const std::uint8_t> t) {
        const Bit past = parity(h.outputs);
        const Bit shared = static_cast<Bit>(tape_word(t, round, 2) & 1u);
        return static_cast<Bit>(past ^ shared ^ (input == 1 ? 1 : 0));
    };
    SideStrategy alice = [side](std::size_t round, std::uint8_t x, const SideHistory& h,
                                std::span<const std::uint8_t> t) { return side(x, round, h, t); };
    SideStrategy bob = [side](std::size_t round, std::uint8_t y, const SideHistory& h,
                              std::span<const std::uint8_t> t) { return side(y, round, h, t); };
    return memory_pair(std::move(alice), std::move(bob), std::move(tape), "memory(history-parity)");
}

CovertSchedule::CovertSchedule(std::span<const std::uint8_t> tape, std::size_t slots, double flip_rate)
    : key_(tape_key(tape)), slots_(slots), carrier_probability_(std::min(1.0, 2.0 * flip_rate)) {
    if (slots == 0) throw std::invalid_argument("CovertSchedule: empty secret");
    if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) throw std::invalid_argument("CovertSchedule: flip_rate outside [0, 1]");
}

bool CovertSchedule::carrier(std::size_t round) const {
    const std::uint64_t w = mix64(key_ ^ mix64(static_cast<std::uint64_t>(round) ^ 0xc0c0c0c0ULL));
    return static_cast<double>(w >> 11) * 0x1.0p-53 < carrier_probability_;
}

std::size_t CovertSchedule::slot(std::size_t round) const {
    const std::uint64_t w = mix64(key_ ^ mix64(static_cast<std::uint64_t>(round) ^ 0x51075107ULL));
    return static_cast<std::size_t>(w % slots_);
}

CovertChannelPair::CovertChannelPair(BitVector secret, double flip_rate, Tape tape, Rng rng)
    : secret_(std::move(secret)),
      flip_rate_(flip_rate),
      tape_(std::move(tape)),
      schedule_(tape_, secret_.size(), flip_rate),
      base_(0.0, std::move(rng)) {}

Outputs CovertChannelPair::round(std::size_t index, std::uint8_t x, std::uint8_t y) {
    Outputs out = base_.round(index, x, y);
    // Bob's flip depends only on the round index, his tape copy and the secret.
    if (schedule_.carrier(index) && secret_[schedule_.slot(index)] == 1) out.b ^= 1u;
    return out;
}

std::string CovertChannelPair::describe() const {
    std::ostringstream os;
    os << "covert(flip_rate=" << flip_rate_ << ", secret_bits=" << secret_.size() << ")";
    return os.str();
}

std::unique_ptr<CovertChannelPair> covert_channel_pair(BitVector secret, double flip_rate, Rng& rng) {
    Tape tape(kCovertTapeBytes);
    for (auto& byte : tape) byte = static_cast<std::uint8_t>(rng.next_u64());
    return std::make_unique<CovertChannelPair>(std::move(secret), flip_rate, std::move(tape), rng.split());
}

}  // namespace diqkd::devices
