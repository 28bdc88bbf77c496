#include "tristrat/abstraction.hpp"
#include "tristrat/oracle.hpp"
#include "tristrat/random_formula.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace tristrat;

// Random one-binding sentences on the abstract scheduler, as in the
// definedness run.
void BM_Check3RandomSentences(benchmark::State& state)
{
    Scheduler s = gen_scheduler(2);
    ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
    auto depth = static_cast<std::size_t>(state.range(0));
    std::vector<Formula> sentences;
    for (std::uint64_t seed = 0; seed < 32; ++seed)
        sentences.push_back(gen_random_formula(seed, depth, a.agents(), a.atoms()));
    EvalOptions o;
    o.budget = 100'000;
    std::size_t i = 0;
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(check3(a, sentences[i++ % sentences.size()], o));
        } catch (const std::exception&) {
            state.counters["over_budget"] += 1;
        }
    }
}
BENCHMARK(BM_Check3RandomSentences)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

Assignment first_actions(const ThreeCgs& g)
{
    Assignment chi;
    for (const auto& a : g.agents())
        chi.agents[a] = Strategy{std::vector<ActionId>(g.num_states(), 0)};
    return chi;
}

void BM_UntilFixpoint(benchmark::State& state)
{
    Scheduler s = gen_scheduler(static_cast<std::size_t>(state.range(0)));
    ThreeCgs e = embed(s.model);
    Assignment chi = first_actions(e);
    Formula body = parse("!rs1 U rs2");
    for (auto _ : state)
        benchmark::DoNotOptimize(eval3(e, body, chi, e.initial()));
}
BENCHMARK(BM_UntilFixpoint)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

// Lasso enumeration against the fixpoint on the same small abstraction.
void BM_OracleUntil(benchmark::State& state)
{
    Scheduler s = gen_scheduler(2);
    ConcreteCgs& g = s.model;
    ThreeCgs a = abstract(g, partition_by_atoms(g, {"rs1", "rs2"})).model;
    Assignment chi = first_actions(a);
    Formula body = parse("!rs1 U rs2");
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_paths(a, chi, a.initial(), body));
}
BENCHMARK(BM_OracleUntil)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
