// Replica-loop kernels: OpenMP for_replicas against the serial reference.
#include <benchmark/benchmark.h>

#include "fpp/cmgraph.hpp"
#include "fpp/limitnet.hpp"
#include "fpp/parallel.hpp"
#include "fpp/shortestpath.hpp"

namespace {

std::uint32_t limit_replica(std::size_t r) {
    static const fpp::DegreeLaw law(1.5);
    fpp::Rng rng = fpp::make_rng(7, r);
    const auto pd = fpp::sample_pd(1.5, 200, rng);
    const auto s = fpp::sample_limit_fpp(pd, fpp::LimitKind::original, 1.0, law, rng);
    return s.graph_hopcount() + fpp::swt_chain_or(pd, rng).hopcount;
}

std::uint32_t graph_replica(std::size_t r) {
    static const fpp::DegreeLaw law(1.5);
    fpp::Rng rng = fpp::make_rng(11, r);
    const auto seq = fpp::sample_degree_sequence(law, 3000, rng);
    const auto sg = fpp::erase(fpp::pair_stubs(seq, rng));
    const auto wg = fpp::assign_weights(sg, fpp::EdgeWeightLaw::exponential(), rng);
    const auto s = fpp::sample_pair_fpp(wg, rng);
    return s.connected() ? s.path->hopcount : 0;
}

template <std::uint32_t (*Kernel)(std::size_t)>
void run(benchmark::State& state, bool parallel) {
    const auto replicas = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto out = fpp::map_replicas<std::uint32_t>(replicas, Kernel, parallel);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * replicas));
    state.counters["threads"] = parallel ? fpp::thread_count() : 1;
}

void BM_LimitSerial(benchmark::State& s) { run<limit_replica>(s, false); }
void BM_LimitParallel(benchmark::State& s) { run<limit_replica>(s, true); }
void BM_GraphSerial(benchmark::State& s) { run<graph_replica>(s, false); }
void BM_GraphParallel(benchmark::State& s) { run<graph_replica>(s, true); }

}  // namespace

BENCHMARK(BM_LimitSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LimitParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphParallel)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
