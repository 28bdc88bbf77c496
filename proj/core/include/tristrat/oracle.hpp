#pragma once

// Brute-force reference for the temporal clauses of three-valued
// satisfaction: enumerates lassos instead of computing fixpoints.

#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"
#include "tristrat/truth.hpp"

namespace tristrat {

inline constexpr std::size_t kOracleMaxStates = 6;

/// Value of a quantifier-free body at s under a complete assignment.
/// Positive clauses quantify over every may lasso from s (prefix and cycle
/// each without repeated states), refutation clauses over must lassos.
/// Throws TooLarge above kOracleMaxStates states or when the lasso count
/// explodes, IncompleteAssignment, UnsupportedFragment for quantified
/// bodies.
Truth oracle_paths(const ThreeCgs& g, const Assignment& chi, StateId s, const Formula& body,
                   ReleaseMode mode = ReleaseMode::Inclusive);

} // namespace tristrat
