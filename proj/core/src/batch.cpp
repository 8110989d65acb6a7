#include "diqkd/protocol/batch.hpp"

namespace diqkd::protocol {

std::size_t default_thread_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace diqkd::protocol
