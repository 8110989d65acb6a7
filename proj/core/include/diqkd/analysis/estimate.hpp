#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "diqkd/bits.hpp"
#include "diqkd/protocol/session.hpp"

namespace diqkd::analysis {

struct ChshEstimate {
    double fraction = 0.0;
    /// opt - fraction; negative when the subset beats opt.
    double eta_prime = 0.0;
};

/// Mean CHSH-condition satisfaction over `subset`; throws std::invalid_argument on an empty subset or bad index.
ChshEstimate estimate_chsh(std::span<const std::uint8_t> x, std::span<const Bit> y, std::span<const Bit> a,
                           std::span<const Bit> b, std::span<const std::size_t> subset);

ChshEstimate estimate_chsh(const protocol::SessionResult& transcript, std::span<const std::size_t> subset);

}  // namespace diqkd::analysis
