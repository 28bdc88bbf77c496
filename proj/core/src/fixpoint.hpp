#pragma once

// Path-quantified fixpoints over graphs where each state offers a set of
// choices and each choice a set of successors. A fixed assignment gives one
// choice per state; collapsing a quantifier block gives one choice per
// tuple of actions for the block's variables.

#include "eval_common.hpp"

#include <vector>

namespace tristrat::detail {

struct ChoiceGraph {
    /// Indexed by state; only states of the domain are filled.
    std::vector<std::vector<std::vector<StateId>>> choices;
    std::vector<StateId> domain;
};

/// How choices and successors are quantified.
enum class Quant : unsigned char {
    AA, // every choice, every successor
    EE, // some choice, some successor
    EA, // some choice, every successor
    AE, // every choice, some successor
};

inline bool pre(const ChoiceGraph& g, StateId s, const Mask& z, Quant q)
{
    const auto& cs = g.choices[s];
    auto all_in = [&](const std::vector<StateId>& succ) {
        for (auto t : succ)
            if (!z[t])
                return false;
        return true;
    };
    auto some_in = [&](const std::vector<StateId>& succ) {
        for (auto t : succ)
            if (z[t])
                return true;
        return false;
    };
    switch (q) {
    case Quant::AA:
        for (const auto& c : cs)
            if (!all_in(c))
                return false;
        return true;
    case Quant::EE:
        for (const auto& c : cs)
            if (some_in(c))
                return true;
        return false;
    case Quant::EA:
        for (const auto& c : cs)
            if (all_in(c))
                return true;
        return false;
    case Quant::AE:
        for (const auto& c : cs)
            if (!some_in(c))
                return false;
        return true;
    }
    return false;
}

template <typename Step>
Mask least_fixpoint(const ChoiceGraph& g, std::size_t n, Step&& step)
{
    Mask z(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto s : g.domain)
            if (!z[s] && step(s, z)) {
                z[s] = 1;
                changed = true;
            }
    }
    return z;
}

template <typename Step>
Mask greatest_fixpoint(const ChoiceGraph& g, std::size_t n, Step&& step)
{
    Mask z(n, 0);
    for (auto s : g.domain)
        z[s] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto s : g.domain)
            if (z[s] && !step(s, z)) {
                z[s] = 0;
                changed = true;
            }
    }
    return z;
}

// Positive clauses: t1/t2 mark where the operands hold.

inline Mask next_pos(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& t)
{
    Mask out(n, 0);
    for (auto s : g.domain)
        out[s] = pre(g, s, t, q);
    return out;
}

inline Mask until_pos(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& t1, const Mask& t2)
{
    return least_fixpoint(g, n, [&](StateId s, const Mask& z) { return t2[s] || (t1[s] && pre(g, s, z, q)); });
}

inline Mask release_pos(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& t1, const Mask& t2,
                        ReleaseMode mode)
{
    if (mode == ReleaseMode::Inclusive)
        return greatest_fixpoint(g, n, [&](StateId s, const Mask& z) { return t1[s] || (t2[s] && pre(g, s, z, q)); });
    return greatest_fixpoint(g, n, [&](StateId s, const Mask& z) { return t2[s] && (t1[s] || pre(g, s, z, q)); });
}

// Refutation clauses over must edges: b1/b2 mark where the operands are
// false; witnesses must be infinite must paths.

inline Mask infinite_paths(const ChoiceGraph& g, std::size_t n, Quant q)
{
    return greatest_fixpoint(g, n, [&](StateId s, const Mask& z) { return pre(g, s, z, q); });
}

/// A refuting successor must itself start an infinite path.
inline Mask next_neg(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& b)
{
    Mask inf = infinite_paths(g, n, q);
    for (StateId s = 0; s < n; ++s)
        inf[s] = inf[s] && b[s];
    return next_pos(g, n, q, inf);
}

inline Mask until_neg(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& b1, const Mask& b2)
{
    Mask inf = infinite_paths(g, n, q);
    Mask reach = least_fixpoint(g, n, [&](StateId s, const Mask& z) {
        return (b1[s] && b2[s] && inf[s]) || (b2[s] && pre(g, s, z, q));
    });
    Mask always = greatest_fixpoint(g, n, [&](StateId s, const Mask& z) { return b2[s] && pre(g, s, z, q); });
    for (auto s : g.domain)
        reach[s] = reach[s] || always[s];
    return reach;
}

inline Mask release_neg(const ChoiceGraph& g, std::size_t n, Quant q, const Mask& b1, const Mask& b2,
                        ReleaseMode mode)
{
    Mask inf = infinite_paths(g, n, q);
    if (mode == ReleaseMode::Inclusive)
        return least_fixpoint(g, n, [&](StateId s, const Mask& z) {
            return b1[s] && ((b2[s] && inf[s]) || pre(g, s, z, q));
        });
    return least_fixpoint(g, n, [&](StateId s, const Mask& z) {
        return (b2[s] && inf[s]) || (b1[s] && pre(g, s, z, q));
    });
}

} // namespace tristrat::detail
