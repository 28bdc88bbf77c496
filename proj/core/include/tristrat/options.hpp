#pragma once

#include "tristrat/formula.hpp"

#include <cstdint>

namespace tristrat {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct EvalOptions {
    ReleaseMode release = ReleaseMode::Inclusive;
    /// Maximum number of strategies enumerated by one check.
    std::uint64_t budget = kDefaultBudget;
    /// Quantifier-block collapse and miniscoping. Exact; disabling them only
    /// forces plain strategy enumeration (used to cross-check).
    bool collapse = true;
    /// Sound prefix shortcuts of check3 (fall back to enumeration when they
    /// do not fire).
    bool shortcuts = true;
};

} // namespace tristrat
