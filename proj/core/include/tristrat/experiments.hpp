#pragma once

// Scheduler benchmark drivers shared by the CLI, the acceptance suite and
// the benchmarks.

#include "tristrat/model.hpp"
#include "tristrat/options.hpp"
#include "tristrat/report.hpp"
#include "tristrat/scheduler.hpp"

#include <cstdint>

namespace tristrat {

/// Builds the scheduler for n processes, abstracts it under `which` and
/// checks the mutual-exclusion property on the abstraction with check3.
/// The row verdict and verification time are those of the abstract check.
CompressionRow compression_row(std::size_t n, SchedulerPartition which, const EvalOptions& opts = {});

struct DefinednessResult {
    std::size_t formulas = 0;
    std::size_t defined = 0;
    std::size_t truths = 0;
    std::size_t falsities = 0;
    std::size_t undefs = 0;
    /// Checks that exceeded the per-formula budget; not counted as defined
    /// or undefined.
    std::size_t skipped = 0;
    double seconds = 0;

    double rate() const { return formulas == skipped ? 0 : double(defined) / double(formulas - skipped); }
};

struct DefinednessConfig {
    std::size_t formulas = 10'000;
    std::uint64_t seed = 1;
    std::size_t min_depth = 2;
    std::size_t max_depth = 5;
    std::uint64_t budget = 100'000;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Checks cfg.formulas random one-binding sentences over the agents and
/// atoms of g with check3, in parallel. Formula i uses seed cfg.seed + i and
/// a depth cycling through [min_depth, max_depth], so the result does not
/// depend on the thread count.
DefinednessResult run_definedness(const ThreeCgs& g, const DefinednessConfig& cfg);

} // namespace tristrat
