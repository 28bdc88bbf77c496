#pragma once

// Seeded random sentence generators.

#include "tristrat/formula.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace tristrat {

/// Sentence of the one-binding fragment: a prefix quantifying between one
/// and |agents| variables (each existential or universal with equal odds),
/// every agent bound once to one of them, then a quantifier-free body of
/// the given nesting depth. At each level below the top every constructor
/// (literal, and, or, X, U, R, F, G) is equally likely; depth 1 is a
/// literal. Deterministic in the seed.
Formula gen_random_formula(std::uint64_t seed, std::size_t depth, std::span<const std::string> agents,
                           std::span<const std::string> atoms);

/// Like gen_random_formula, but subformulas may themselves be closed
/// strategic sentences nested under Boolean and temporal operators, and
/// agents may be rebound. Used to exercise the general evaluators.
Formula gen_random_sentence(std::uint64_t seed, std::size_t depth, std::span<const std::string> agents,
                            std::span<const std::string> atoms);

} // namespace tristrat
