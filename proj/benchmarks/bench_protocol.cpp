#include <benchmark/benchmark.h>

#include "diqkd/devices.hpp"
#include "diqkd/protocol/session.hpp"
#include "diqkd/recon.hpp"

using namespace diqkd;

static void BM_HonestRounds(benchmark::State& state) {
    devices::HonestPair pair(0.002, Rng(1));
    Rng inputs(2);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto out = pair.round(i++, static_cast<std::uint8_t>(inputs.uniform_below(3)), inputs.bit());
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_HonestRounds);

static void BM_Reconcile(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double q = 0.0055;
    Rng rng(3);
    const auto bob = rng.bits(n);
    auto alice = bob;
    for (auto& b : alice)
        if (rng.uniform01() < q) b ^= 1;
    for (auto _ : state) {
        Rng local(4);
        benchmark::DoNotOptimize(recon::reconcile(alice, bob, q, 1e-6, local));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Reconcile)->Arg(10000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_Session(benchmark::State& state) {
    protocol::ProtocolParams params;  // m = 120000
    params.pa_backend = state.range(0) == 0 ? protocol::PaBackend::Toeplitz : protocol::PaBackend::Trevisan;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        devices::HonestPair pair(0.002, Rng(seed));
        Rng rng(++seed);
        benchmark::DoNotOptimize(protocol::run_protocol_a(pair, nullptr, params, rng));
    }
    state.SetLabel(params.pa_backend == protocol::PaBackend::Toeplitz ? "toeplitz" : "trevisan");
}
BENCHMARK(BM_Session)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
