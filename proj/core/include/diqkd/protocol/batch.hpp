#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

#include "diqkd/rng.hpp"

namespace diqkd::protocol {

/// Worker count used when a batch is given 0: hardware concurrency, at least 1.
std::size_t default_thread_count();

/// Runs fn(index, rng) for index in [0, trials) on a worker pool. Each trial
/// gets Rng::stream(master_seed, index); results come back ordered by index,
/// so output is independent of scheduling. The first exception is rethrown.
template <typename Fn>
auto run_batch(std::size_t trials, std::uint64_t master_seed, Fn&& fn, std::size_t threads = 0)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t, Rng&>> {
    using Result = std::invoke_result_t<Fn&, std::size_t, Rng&>;
    std::vector<Result> results(trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            try {
                Rng rng = Rng::stream(master_seed, i);
                results[i] = fn(i, rng);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = trials;
            }
        }
    };

    const std::size_t count = std::min(trials, threads == 0 ? default_thread_count() : threads);
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace diqkd::protocol
