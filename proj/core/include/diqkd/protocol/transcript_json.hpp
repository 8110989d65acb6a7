#pragma once

#include <string>
#include <string_view>

#include "diqkd/protocol/session.hpp"

namespace diqkd::protocol {

/// Session transcript as JSON:
///   {"m", "x", "y", "a", "b", "bell_set", "check_set", "eta_observed", "aborted",
///    "abort_reason" (string or null), "leakage_bits", "alice_key", "bob_key" (hex of
///    LSB-first packed bits), "key_bits", "raw_key_positions",
///    "messages": [{"from": "A"|"B", "seq", "kind", "bits", "payload" (hex)}]}
/// `indent` < 0 gives compact output.
std::string transcript_to_json(const SessionResult& result, int indent = -1);

/// Throws std::invalid_argument on malformed input.
SessionResult transcript_from_json(std::string_view text);

}  // namespace diqkd::protocol
