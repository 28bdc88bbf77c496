#pragma once

// Two-valued satisfaction over concrete models and three-valued
// satisfaction over may/must models, both restricted to positional
// strategies.

#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"
#include "tristrat/options.hpp"
#include "tristrat/truth.hpp"

#include <cstdint>
#include <vector>

namespace tristrat {

/// Ultimately periodic path: prefix followed by cycle repeated forever.
struct Lasso {
    std::vector<StateId> prefix;
    std::vector<StateId> cycle;

    /// i-th state of the infinite path.
    StateId at(std::size_t i) const
    {
        return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
    }
    friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Counters filled by check2/check3.
struct CheckStats {
    std::uint64_t strategies = 0;
    bool shortcut = false; // a sound prefix shortcut decided the verdict
};

/// Unique play from s under a complete assignment.
/// Throws IncompleteAssignment.
Lasso play(const ConcreteCgs& g, const Assignment& chi, StateId s);

/// Throws FreeUnderTemporal, IncompleteAssignment, UnknownAtom,
/// BudgetExceeded.
bool eval2(const ConcreteCgs& g, const Formula& phi, const Assignment& chi, StateId s,
           const EvalOptions& opts = {});

/// eval2 at the initial state with the empty assignment.
/// Throws NotASentence and everything eval2 throws.
bool check2(const ConcreteCgs& g, const Formula& phi, const EvalOptions& opts = {},
            CheckStats* stats = nullptr);

using Valuation = std::vector<Truth>;

/// Successor sets induced by a complete assignment.
struct InducedGraphs {
    std::vector<std::vector<StateId>> may_succ;
    std::vector<std::vector<StateId>> must_succ;
    std::vector<ProfileId> joint;

    /// Throws IncompleteAssignment.
    static InducedGraphs of(const ThreeCgs& g, const Assignment& chi);
};

Truth next_value(const InducedGraphs& ig, const Valuation& sub, StateId s);
Valuation until_value(const InducedGraphs& ig, const Valuation& sub1, const Valuation& sub2);
Valuation release_value(const InducedGraphs& ig, const Valuation& sub1, const Valuation& sub2,
                        ReleaseMode mode = ReleaseMode::Inclusive);

/// Throws FreeUnderTemporal, IncompleteAssignment, UnknownAtom,
/// BudgetExceeded.
Truth eval3(const ThreeCgs& g, const Formula& phi, const Assignment& chi, StateId s,
            const EvalOptions& opts = {});

/// eval3 at the initial state with the empty assignment, preceded by the
/// sound prefix shortcuts when enabled.
/// Throws NotASentence and everything eval3 throws.
Truth check3(const ThreeCgs& g, const Formula& phi, const EvalOptions& opts = {},
             CheckStats* stats = nullptr);

} // namespace tristrat
