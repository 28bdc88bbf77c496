#pragma once

// Strategy Logic formulas in negation normal form.
//
// A Formula is an immutable, shared tree. Negation only ever appears on
// atoms (NegAtom); the dual pairs And/Or, Exists/Forall and Until/Release
// are all primitive. The reserved atoms "true" and "false" denote the
// constants and are used by the F/G expansions:
//
//     F phi  ==  true U phi
//     G phi  ==  false R phi

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tristrat {

enum class Op : unsigned char {
    Atom,
    NegAtom,
    And,
    Or,
    Exists,
    Forall,
    Bind,
    Next,
    Until,
    Release,
};

inline constexpr std::string_view kTrueAtom = "true";
inline constexpr std::string_view kFalseAtom = "false";

class Formula {
public:
    struct Node;

    static Formula atom(std::string name);
    static Formula neg_atom(std::string name);
    static Formula top() { return atom(std::string(kTrueAtom)); }
    static Formula bottom() { return atom(std::string(kFalseAtom)); }
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);
    static Formula bind(std::string agent, std::string var, Formula body);
    static Formula next(Formula body);
    static Formula until(Formula lhs, Formula rhs);
    static Formula release(Formula lhs, Formula rhs);
    static Formula eventually(Formula body) { return until(top(), std::move(body)); }
    static Formula globally(Formula body) { return release(bottom(), std::move(body)); }

    Op op() const noexcept;

    /// Atom name for Atom/NegAtom, variable for Exists/Forall/Bind.
    const std::string& name() const noexcept;
    /// Agent of a Bind node; empty otherwise.
    const std::string& agent() const noexcept;

    /// Single operand of unary nodes, left operand of binary nodes.
    const Formula& lhs() const noexcept;
    /// Right operand of binary nodes.
    const Formula& rhs() const noexcept;
    const Formula& body() const noexcept { return lhs(); }

    bool is_literal() const noexcept { return op() == Op::Atom || op() == Op::NegAtom; }
    bool is_temporal() const noexcept
    {
        return op() == Op::Next || op() == Op::Until || op() == Op::Release;
    }
    bool is_quantifier() const noexcept { return op() == Op::Exists || op() == Op::Forall; }
    bool is_binary() const noexcept
    {
        return op() == Op::And || op() == Op::Or || op() == Op::Until || op() == Op::Release;
    }

    /// Stable identity of the underlying node (used as a memo key).
    const void* id() const noexcept { return node_.get(); }

    std::size_t size() const;
    std::size_t depth() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Op op;
    std::string name;
    std::string agent;
    std::vector<Formula> kids;
};

/// Free agents and variables of a formula.
struct FreeSet {
    std::set<std::string> agents;
    std::set<std::string> vars;

    bool empty() const noexcept { return agents.empty() && vars.empty(); }
    friend bool operator==(const FreeSet&, const FreeSet&) = default;
};

/// Free agents/variables. Every atom and every temporal operator needs a
/// strategy for each declared agent; a binding (a,x) discharges agent a and
/// introduces variable x; a quantifier over x discharges x.
FreeSet free(const Formula& phi, const std::set<std::string>& declared_agents);

bool is_sentence(const Formula& phi, const std::set<std::string>& declared_agents);

/// Agents and variables whose strategy is actually read during evaluation.
/// Differs from free() in that atoms read no strategy at all.
FreeSet dependencies(const Formula& phi, const std::set<std::string>& declared_agents);

/// Syntactic NNF negation: swaps Atom/NegAtom, And/Or, Exists/Forall,
/// Until/Release; keeps Next and Bind. Involutive and size-preserving.
Formula dualize(const Formula& phi);

enum class ReleaseMode : unsigned char {
    /// phi1 R phi2 holds iff for every i, phi2 holds at i or phi1 holds at
    /// some j <= i (the non-strict clause).
    Inclusive,
    /// Standard LTL release: for every i, phi2 holds at i or phi1 holds at
    /// some j < i.
    Standard,
};

/// Exact semantic negation under the given release reading. In Standard
/// mode this is dualize(); in Inclusive mode Until and Release are not
/// syntactic duals, so they are rewritten:
///     !(a U b)  ==  (!a & !b) R !b
///     !(a R b)  ==  !a U (!a & !b)
Formula negate(const Formula& phi, ReleaseMode mode);

/// Variables introduced by quantifiers, agents named in bindings.
std::set<std::string> quantified_variables(const Formula& phi);
std::set<std::string> bound_agents(const Formula& phi);
std::set<std::string> atoms_of(const Formula& phi);

/// Render in the concrete grammar accepted by parse(); parse(print(f)) == f.
std::string print(const Formula& phi);

/// Parse the concrete grammar (see docs/grammar.md).
/// Throws SyntaxError or NamespaceError.
Formula parse(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Formula& phi);

} // namespace tristrat
