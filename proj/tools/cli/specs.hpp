#pragma once

// Device and eavesdropper specifications accepted on the command line.
//
//   honest                 depolarized EPR pairs (noise from --noise)
//   deterministic[:AAA:BB] fixed strategy, default the best one (000:00)
//   memory | tape-sync     shared-tape pair playing an optimal strategy per round
//   memory-parity          tape plus own-output-history parity pair
//   covert:RATE            honest pair leaking a 16-bit secret at flip rate RATE
//
//   eve: auto | none | transcript | covert

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "diqkd/security_report.hpp"

namespace diqkd::cli {

enum class DeviceKind { Honest, Deterministic, TapeSync, MemoryParity, Covert };

struct DeviceSpec {
    DeviceKind kind = DeviceKind::Honest;
    double noise = 0.0;
    devices::DeterministicStrategy strategy = devices::best_deterministic_strategy();
    double flip_rate = 0.0;

    std::string name() const;
};

/// Throws std::invalid_argument on an unknown or malformed spec.
DeviceSpec parse_device(std::string_view text, double noise);

enum class EveKind { Auto, None, Transcript, Covert };

EveKind parse_eve(std::string_view text);
std::string_view to_string(EveKind kind);

inline constexpr std::size_t kCovertSlots = 16;

/// Per-trial factory: fresh devices from the trial stream and, unless
/// EveKind::None, an eavesdropper (a covert decoder only for covert devices).
eve::Scenario make_scenario(const DeviceSpec& device, EveKind eve, eve::TranscriptEveModel model = {});

std::unique_ptr<devices::DevicePair> make_pair(const DeviceSpec& device, Rng& rng);

}  // namespace diqkd::cli
