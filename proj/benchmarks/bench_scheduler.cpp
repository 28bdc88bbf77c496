#include "tristrat/abstraction.hpp"
#include "tristrat/reduction.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tristrat;

void BM_GenScheduler(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gen_scheduler(n));
}
BENCHMARK(BM_GenScheduler)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

void BM_Abstract(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(abstract(s.model, s.waiting_cluster));
    state.counters["concrete_states"] = static_cast<double>(s.model.num_states());
}
BENCHMARK(BM_Abstract)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

void BM_Check3Abstract(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
    for (auto _ : state)
        benchmark::DoNotOptimize(check3(a, s.property));
}
BENCHMARK(BM_Check3Abstract)->DenseRange(2, 7)->Unit(benchmark::kMicrosecond);

void BM_Check3AbstractNoShortcut(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
    EvalOptions o;
    o.shortcuts = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(check3(a, s.property, o));
}
BENCHMARK(BM_Check3AbstractNoShortcut)->DenseRange(2, 7)->Unit(benchmark::kMicrosecond);

void BM_Check2Concrete(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(check2(s.model, s.property));
}
BENCHMARK(BM_Check2Concrete)->DenseRange(2, 7)->Unit(benchmark::kMicrosecond);

void BM_SplitSatisfactionSide(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
    for (auto _ : state) {
        SplitInstance inst = split(a, s.property);
        benchmark::DoNotOptimize(check2(inst.sat_model, inst.sat_formula));
    }
}
BENCHMARK(BM_SplitSatisfactionSide)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

} // namespace
