// Serial reference kernels against their OpenMP counterparts.
#include "fixtures.hpp"

#include <loopkit/identities.hpp>
#include <loopkit/search.hpp>

#include <benchmark/benchmark.h>

using namespace loopkit;

namespace {

const LoopTable & moufang81()
{
    static const auto loop = fixtures::cml81();
    return loop;
}

void identity_check(benchmark::State & state, bool parallel, IdentityId id)
{
    const auto & l = moufang81();
    const auto & def = definition(id);
    const auto * inv = l.inverses() ? &*l.inverses() : nullptr;
    for (auto _ : state) {
        auto r = parallel ? check_identity_parallel(l.table(), l.neutral(), inv, def, true)
                          : check_identity_serial(l.table(), l.neutral(), inv, def, true);
        benchmark::DoNotOptimize(r.violations);
    }
    state.SetItemsProcessed(state.iterations() * 81 * 81 * 81);
}

void search_run(benchmark::State & state, bool parallel, const char * line)
{
    auto spec = parse_search_spec(line);
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        auto r = parallel ? search(spec) : search_serial(spec);
        nodes = r.nodes;
        benchmark::DoNotOptimize(r.count);
    }
    state.counters["nodes"] = static_cast<double>(nodes);
}

} // namespace

BENCHMARK_CAPTURE(identity_check, mfg1_serial, false, IdentityId::MFG1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(identity_check, mfg1_parallel, true, IdentityId::MFG1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(identity_check, crif_serial, false, IdentityId::CRIF)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(identity_check, crif_parallel, true, IdentityId::CRIF)->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(search_run, order6_serial, false, "n=6 mode=count")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search_run, order6_parallel, true, "n=6 mode=count")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search_run, flex_ip7_serial, false, "n=7 require=flex,ip")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search_run, flex_ip7_parallel, true, "n=7 require=flex,ip")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search_run, crif8_serial, false, "n=8 require=ip,crif commutative=true mode=count")
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search_run, crif8_parallel, true, "n=8 require=ip,crif commutative=true mode=count")
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
