#include <benchmark/benchmark.h>

#include "diqkd/extract/rs_hadamard.hpp"
#include "diqkd/extract/toeplitz.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/extract/weak_design.hpp"

using namespace diqkd;

static void BM_ToeplitzHash(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t out = n / 28;
    Rng rng(1);
    const auto x = rng.bits(n);
    const auto seed = extract::ToeplitzSeed::random(n, out, rng);
    for (auto _ : state) benchmark::DoNotOptimize(extract::toeplitz_hash(x, seed));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ToeplitzHash)->Arg(1 << 12)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

static void BM_CodeBit(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    const std::size_t n = 16384;
    const extract::CodeParams params{n, k, (n + k - 1) / k - 1};
    const extract::RsHadamardCode code(params);
    Rng rng(2);
    const auto coef = code.coefficients(rng.bits(n));
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(code.bit(coef, index));
        index = (index * 6364136223846793005ULL + 1) & (params.length() - 1);
    }
}
BENCHMARK(BM_CodeBit)->Arg(12)->Arg(16)->Arg(24);

static void BM_TrevisanExtract(benchmark::State& state) {
    const auto m_out = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 16384;
    const auto spec = extract::ExtractorSpec::for_key(n, m_out, 1e-6);
    Rng rng(3);
    const auto x = rng.bits(n);
    const auto seed = rng.bits(spec.seed_length());
    for (auto _ : state) benchmark::DoNotOptimize(extract::trevisan_extract(x, seed, spec));
    state.counters["k"] = spec.code.k;
    state.counters["seed_bits"] = static_cast<double>(spec.seed_length());
}
BENCHMARK(BM_TrevisanExtract)->Arg(64)->Arg(585)->Unit(benchmark::kMillisecond);

static void BM_BuildWeakDesign(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(extract::build_weak_design(16, m, 2.0));
}
BENCHMARK(BM_BuildWeakDesign)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);
