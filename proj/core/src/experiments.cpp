#include "tristrat/experiments.hpp"

#include "tristrat/abstraction.hpp"
#include "tristrat/errors.hpp"
#include "tristrat/random_formula.hpp"
#include "tristrat/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <vector>

namespace tristrat {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

} // namespace

CompressionRow compression_row(std::size_t n, SchedulerPartition which, const EvalOptions& opts)
{
    Scheduler sched = gen_scheduler(n);
    Abstraction abs = abstract(sched.model, sched.partition(which));
    CompressionRow row;
    row.n = n;
    row.concrete_states = abs.report.concrete_states;
    row.concrete_transitions = abs.report.concrete_transitions;
    row.abstract_states = abs.report.abstract_states;
    row.abstract_transitions = abs.report.may_transitions + abs.report.must_transitions;
    row.abstraction_seconds = abs.report.build_seconds;
    auto t0 = Clock::now();
    row.verdict = check3(abs.model, sched.property, opts);
    row.verification_seconds = since(t0);
    return row;
}

DefinednessResult run_definedness(const ThreeCgs& g, const DefinednessConfig& cfg)
{
    std::vector<std::string> atoms(g.atoms().begin(), g.atoms().end());
    std::vector<std::string> agents(g.agents().begin(), g.agents().end());
    std::size_t span = cfg.max_depth >= cfg.min_depth ? cfg.max_depth - cfg.min_depth + 1 : 1;

    // Verdicts are stored per formula; 3 marks a skipped check.
    std::vector<std::uint8_t> verdict(cfg.formulas, 0);
    std::atomic<std::size_t> next{0};
    EvalOptions opts;
    opts.budget = cfg.budget;

    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.formulas; i = next++) {
            Formula phi = gen_random_formula(cfg.seed + i, cfg.min_depth + i % span, agents, atoms);
            try {
                verdict[i] = static_cast<std::uint8_t>(check3(g, phi, opts));
            } catch (const BudgetExceeded&) {
                verdict[i] = 3;
            }
        }
    };

    auto t0 = Clock::now();
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();

    DefinednessResult r;
    r.formulas = cfg.formulas;
    for (auto v : verdict) {
        if (v == 3)
            ++r.skipped;
        else if (v == static_cast<std::uint8_t>(Truth::True))
            ++r.truths;
        else if (v == static_cast<std::uint8_t>(Truth::False))
            ++r.falsities;
        else
            ++r.undefs;
    }
    r.defined = r.truths + r.falsities;
    r.seconds = since(t0);
    return r;
}

} // namespace tristrat
