#include "diqkd/protocol/chsh.hpp"

#include <stdexcept>

namespace diqkd::protocol {

std::vector<std::size_t> select_bell_rounds(std::size_t m, std::size_t size, Rng& rng) {
    if (size < 1 || size > m) throw std::invalid_argument("select_bell_rounds: size must lie in [1, m]");
    std::vector<bool> chosen(m, false);
    for (std::size_t j = m - size; j < m; ++j) {
        const auto t = static_cast<std::size_t>(rng.uniform_below(j + 1));
        if (chosen[t]) {
            chosen[j] = true;
        } else {
            chosen[t] = true;
        }
    }
    std::vector<std::size_t> out;
    out.reserve(size);
    for (std::size_t i = 0; i < m; ++i)
        if (chosen[i]) out.push_back(i);
    return out;
}

}  // namespace diqkd::protocol
