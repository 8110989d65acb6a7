#include "diqkd/analysis/estimate.hpp"

#include <stdexcept>

#include "diqkd/analysis/bounds.hpp"
#include "diqkd/protocol/chsh.hpp"

namespace diqkd::analysis {

ChshEstimate estimate_chsh(std::span<const std::uint8_t> x, std::span<const Bit> y, std::span<const Bit> a,
                           std::span<const Bit> b, std::span<const std::size_t> subset) {
    if (subset.empty()) throw std::invalid_argument("estimate_chsh: empty subset");
    std::size_t satisfied = 0;
    for (std::size_t i : subset) {
        if (i >= x.size() || i >= y.size() || i >= a.size() || i >= b.size())
            throw std::invalid_argument("estimate_chsh: round index out of range");
        satisfied += protocol::chsh_satisfied(x[i], y[i], a[i], b[i]) ? 1 : 0;
    }
    ChshEstimate e;
    e.fraction = static_cast<double>(satisfied) / static_cast<double>(subset.size());
    e.eta_prime = compute_opt() - e.fraction;
    return e;
}

ChshEstimate estimate_chsh(const protocol::SessionResult& transcript, std::span<const std::size_t> subset) {
    return estimate_chsh(transcript.x, transcript.y, transcript.a, transcript.b, subset);
}

}  // namespace diqkd::analysis
