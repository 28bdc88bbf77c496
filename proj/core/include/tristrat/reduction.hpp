#pragma once

// Reduction of a three-valued check to two two-valued checks: one model in
// which a True verdict proves satisfaction and one in which it proves
// violation.

#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"
#include "tristrat/options.hpp"
#include "tristrat/semantics.hpp"

#include <set>
#include <string>

namespace tristrat {

struct Classification {
    std::set<std::string> e_agents; // bound to existentially quantified variables
    std::set<std::string> u_agents; // bound to universally quantified variables
};

/// Requires a quantifier/binding prefix over a quantifier-free body, every
/// agent bound once and every variable quantified once.
/// Throws UnsupportedFragment.
Classification classify(const Formula& phi);

struct SplitInstance {
    ConcreteCgs sat_model;
    Formula sat_formula;
    ConcreteCgs viol_model;
    Formula viol_formula;
    std::set<std::string> e_agents, u_agents;
    /// Agent resolving nondeterminism, added to both models.
    std::string nature;
};

/// Throws UnsupportedFragment, NotASentence.
SplitInstance split(const ThreeCgs& g, const Formula& phi, ReleaseMode mode = ReleaseMode::Inclusive);

/// Throws InconsistentSplit when both verdicts hold.
Truth combine(bool sat, bool viol);

/// split + both two-valued checks + combine.
Truth check_split(const ThreeCgs& g, const Formula& phi, const EvalOptions& opts = {},
                  CheckStats* stats = nullptr);

/// Two model documents plus formula texts.
std::string to_json(const SplitInstance& inst);

} // namespace tristrat
