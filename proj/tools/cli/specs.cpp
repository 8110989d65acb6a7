#include "specs.hpp"

#include <sstream>
#include <stdexcept>

namespace diqkd::cli {

std::string DeviceSpec::name() const {
    std::ostringstream out;
    switch (kind) {
        case DeviceKind::Honest: out << "honest(" << noise << ")"; break;
        case DeviceKind::Deterministic: out << "deterministic:" << strategy.to_string(); break;
        case DeviceKind::TapeSync: out << "memory"; break;
        case DeviceKind::MemoryParity: out << "memory-parity"; break;
        case DeviceKind::Covert: out << "covert:" << flip_rate; break;
    }
    return out.str();
}

DeviceSpec parse_device(std::string_view text, double noise) {
    DeviceSpec spec;
    spec.noise = noise;
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "honest" && rest.empty()) {
        if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must lie in [0, 1]");
        spec.kind = DeviceKind::Honest;
    } else if (head == "deterministic") {
        spec.kind = DeviceKind::Deterministic;
        if (!rest.empty()) spec.strategy = devices::DeterministicStrategy::parse(rest);
    } else if ((head == "memory" || head == "tape-sync") && rest.empty()) {
        spec.kind = DeviceKind::TapeSync;
    } else if (head == "memory-parity" && rest.empty()) {
        spec.kind = DeviceKind::MemoryParity;
    } else if (head == "covert" && !rest.empty()) {
        spec.kind = DeviceKind::Covert;
        std::size_t used = 0;
        try {
            spec.flip_rate = std::stod(std::string(rest), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != rest.size() || !(spec.flip_rate >= 0.0 && spec.flip_rate <= 0.5))
            throw std::invalid_argument("covert flip rate must be a number in [0, 0.5]");
    } else {
        throw std::invalid_argument("unknown device spec '" + std::string(text) + "'");
    }
    return spec;
}

EveKind parse_eve(std::string_view text) {
    if (text == "auto") return EveKind::Auto;
    if (text == "none") return EveKind::None;
    if (text == "transcript") return EveKind::Transcript;
    if (text == "covert") return EveKind::Covert;
    throw std::invalid_argument("unknown eve spec '" + std::string(text) + "'");
}

std::string_view to_string(EveKind kind) {
    switch (kind) {
        case EveKind::Auto: return "auto";
        case EveKind::None: return "none";
        case EveKind::Transcript: return "transcript";
        case EveKind::Covert: return "covert";
    }
    return "unknown";
}

namespace {

devices::Tape random_tape(Rng& rng) {
    devices::Tape tape(devices::kCovertTapeBytes);
    for (auto& byte : tape) byte = static_cast<std::uint8_t>(rng.next_u64() >> 56);
    return tape;
}

}  // namespace

std::unique_ptr<devices::DevicePair> make_pair(const DeviceSpec& device, Rng& rng) {
    switch (device.kind) {
        case DeviceKind::Honest: return devices::honest_pair(device.noise, rng.split());
        case DeviceKind::Deterministic: return devices::deterministic_pair(device.strategy);
        case DeviceKind::TapeSync: return devices::tape_synchronized_pair(random_tape(rng));
        case DeviceKind::MemoryParity: return devices::history_parity_pair(random_tape(rng));
        case DeviceKind::Covert: return devices::covert_channel_pair(rng.bits(kCovertSlots), device.flip_rate, rng);
    }
    throw std::logic_error("unhandled device kind");
}

eve::Scenario make_scenario(const DeviceSpec& device, EveKind eve_kind, eve::TranscriptEveModel model) {
    if (eve_kind == EveKind::Covert && device.kind != DeviceKind::Covert)
        throw std::invalid_argument("the covert decoder needs a covert device");
    return [device, eve_kind, model](Rng& rng) {
        eve::Trial trial;
        if (device.kind == DeviceKind::Covert) {
            auto pair = devices::covert_channel_pair(rng.bits(kCovertSlots), device.flip_rate, rng);
            trial.secret = pair->secret();
            if (eve_kind == EveKind::Auto || eve_kind == EveKind::Covert)
                trial.eve = eve::covert_decoder_eve(pair->tape(), kCovertSlots, device.flip_rate);
            else if (eve_kind == EveKind::Transcript)
                trial.eve = eve::transcript_eve(model);
            trial.pair = std::move(pair);
            return trial;
        }
        trial.pair = make_pair(device, rng);
        if (eve_kind != EveKind::None) trial.eve = eve::transcript_eve(model);
        return trial;
    };
}

}  // namespace diqkd::cli
