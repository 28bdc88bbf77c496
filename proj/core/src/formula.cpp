#include "tristrat/formula.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace tristrat {

namespace {

const std::string kEmpty;

Formula::Node make(Op op, std::string name, std::string agent, std::vector<Formula> kids)
{
    return Formula::Node{op, std::move(name), std::move(agent), std::move(kids)};
}

} // namespace

// Formula construction goes through a private constructor; the helpers below
// are members so they can reach it.

Formula Formula::atom(std::string name)
{
    return Formula(std::make_shared<const Node>(make(Op::Atom, std::move(name), {}, {})));
}

Formula Formula::neg_atom(std::string name)
{
    return Formula(std::make_shared<const Node>(make(Op::NegAtom, std::move(name), {}, {})));
}

Formula Formula::conj(Formula lhs, Formula rhs)
{
    return Formula(std::make_shared<const Node>(make(Op::And, {}, {}, {std::move(lhs), std::move(rhs)})));
}

Formula Formula::disj(Formula lhs, Formula rhs)
{
    return Formula(std::make_shared<const Node>(make(Op::Or, {}, {}, {std::move(lhs), std::move(rhs)})));
}

Formula Formula::exists(std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(make(Op::Exists, std::move(var), {}, {std::move(body)})));
}

Formula Formula::forall(std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(make(Op::Forall, std::move(var), {}, {std::move(body)})));
}

Formula Formula::bind(std::string agent, std::string var, Formula body)
{
    return Formula(std::make_shared<const Node>(
        make(Op::Bind, std::move(var), std::move(agent), {std::move(body)})));
}

Formula Formula::next(Formula body)
{
    return Formula(std::make_shared<const Node>(make(Op::Next, {}, {}, {std::move(body)})));
}

Formula Formula::until(Formula lhs, Formula rhs)
{
    return Formula(std::make_shared<const Node>(make(Op::Until, {}, {}, {std::move(lhs), std::move(rhs)})));
}

Formula Formula::release(Formula lhs, Formula rhs)
{
    return Formula(
        std::make_shared<const Node>(make(Op::Release, {}, {}, {std::move(lhs), std::move(rhs)})));
}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }
const std::string& Formula::agent() const noexcept { return node_->agent; }
const Formula& Formula::lhs() const noexcept { return node_->kids.front(); }
const Formula& Formula::rhs() const noexcept { return node_->kids.back(); }

std::size_t Formula::size() const
{
    std::size_t n = 1;
    for (const auto& k : node_->kids)
        n += k.size();
    return n;
}

std::size_t Formula::depth() const
{
    std::size_t d = 0;
    for (const auto& k : node_->kids)
        d = std::max(d, k.depth());
    return d + 1;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.op != y.op || x.name != y.name || x.agent != y.agent || x.kids.size() != y.kids.size())
        return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (!(x.kids[i] == y.kids[i]))
            return false;
    return true;
}

namespace {

FreeSet free_rec(const Formula& f, const std::set<std::string>& agents, bool atoms_need_agents)
{
    switch (f.op()) {
    case Op::Atom:
    case Op::NegAtom:
        if (atoms_need_agents)
            return FreeSet{agents, {}};
        return {};
    case Op::And:
    case Op::Or: {
        auto l = free_rec(f.lhs(), agents, atoms_need_agents);
        auto r = free_rec(f.rhs(), agents, atoms_need_agents);
        l.agents.insert(r.agents.begin(), r.agents.end());
        l.vars.insert(r.vars.begin(), r.vars.end());
        return l;
    }
    case Op::Exists:
    case Op::Forall: {
        auto b = free_rec(f.body(), agents, atoms_need_agents);
        b.vars.erase(f.name());
        return b;
    }
    case Op::Bind: {
        auto b = free_rec(f.body(), agents, atoms_need_agents);
        if (b.agents.erase(f.agent()) > 0)
            b.vars.insert(f.name());
        return b;
    }
    case Op::Next:
    case Op::Until:
    case Op::Release: {
        FreeSet out{agents, {}};
        for (const auto* k : {&f.lhs(), &f.rhs()}) {
            auto s = free_rec(*k, agents, atoms_need_agents);
            out.agents.insert(s.agents.begin(), s.agents.end());
            out.vars.insert(s.vars.begin(), s.vars.end());
            if (f.op() == Op::Next)
                break;
        }
        return out;
    }
    }
    return {};
}

void collect(const Formula& f, std::set<std::string>& vars, std::set<std::string>& agents,
             std::set<std::string>& atoms)
{
    switch (f.op()) {
    case Op::Atom:
    case Op::NegAtom:
        if (f.name() != kTrueAtom && f.name() != kFalseAtom)
            atoms.insert(f.name());
        return;
    case Op::Exists:
    case Op::Forall:
        vars.insert(f.name());
        break;
    case Op::Bind:
        agents.insert(f.agent());
        break;
    default:
        break;
    }
    collect(f.lhs(), vars, agents, atoms);
    if (f.is_binary())
        collect(f.rhs(), vars, agents, atoms);
}

} // namespace

FreeSet free(const Formula& phi, const std::set<std::string>& declared_agents)
{
    return free_rec(phi, declared_agents, true);
}

FreeSet dependencies(const Formula& phi, const std::set<std::string>& declared_agents)
{
    return free_rec(phi, declared_agents, false);
}

bool is_sentence(const Formula& phi, const std::set<std::string>& declared_agents)
{
    return free(phi, declared_agents).empty();
}

Formula dualize(const Formula& f)
{
    switch (f.op()) {
    case Op::Atom: return Formula::neg_atom(f.name());
    case Op::NegAtom: return Formula::atom(f.name());
    case Op::And: return Formula::disj(dualize(f.lhs()), dualize(f.rhs()));
    case Op::Or: return Formula::conj(dualize(f.lhs()), dualize(f.rhs()));
    case Op::Exists: return Formula::forall(f.name(), dualize(f.body()));
    case Op::Forall: return Formula::exists(f.name(), dualize(f.body()));
    case Op::Bind: return Formula::bind(f.agent(), f.name(), dualize(f.body()));
    case Op::Next: return Formula::next(dualize(f.body()));
    case Op::Until: return Formula::release(dualize(f.lhs()), dualize(f.rhs()));
    case Op::Release: return Formula::until(dualize(f.lhs()), dualize(f.rhs()));
    }
    return f;
}

Formula negate(const Formula& f, ReleaseMode mode)
{
    if (mode == ReleaseMode::Standard)
        return dualize(f);
    switch (f.op()) {
    case Op::Atom:
    case Op::NegAtom: return dualize(f);
    case Op::And: return Formula::disj(negate(f.lhs(), mode), negate(f.rhs(), mode));
    case Op::Or: return Formula::conj(negate(f.lhs(), mode), negate(f.rhs(), mode));
    case Op::Exists: return Formula::forall(f.name(), negate(f.body(), mode));
    case Op::Forall: return Formula::exists(f.name(), negate(f.body(), mode));
    case Op::Bind: return Formula::bind(f.agent(), f.name(), negate(f.body(), mode));
    case Op::Next: return Formula::next(negate(f.body(), mode));
    case Op::Until: {
        auto na = negate(f.lhs(), mode);
        auto nb = negate(f.rhs(), mode);
        return Formula::release(Formula::conj(na, nb), nb);
    }
    case Op::Release: {
        auto na = negate(f.lhs(), mode);
        auto nb = negate(f.rhs(), mode);
        return Formula::until(na, Formula::conj(na, nb));
    }
    }
    return f;
}

std::set<std::string> quantified_variables(const Formula& phi)
{
    std::set<std::string> v, a, p;
    collect(phi, v, a, p);
    return v;
}

std::set<std::string> bound_agents(const Formula& phi)
{
    std::set<std::string> v, a, p;
    collect(phi, v, a, p);
    return a;
}

std::set<std::string> atoms_of(const Formula& phi)
{
    std::set<std::string> v, a, p;
    collect(phi, v, a, p);
    return p;
}

namespace {

// Quantifiers and bindings extend as far right as possible, so they are
// parenthesised whenever they are not the last thing printed.
void print_rec(const Formula& f, std::string& out, bool tail)
{
    auto prefix = [&](const std::string& head) {
        if (!tail)
            out += '(';
        out += head;
        print_rec(f.body(), out, true);
        if (!tail)
            out += ')';
    };
    auto binary = [&](const char* sym) {
        out += '(';
        print_rec(f.lhs(), out, false);
        out += sym;
        print_rec(f.rhs(), out, true);
        out += ')';
    };
    switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::NegAtom: out += '!'; out += f.name(); return;
    case Op::And: binary(" & "); return;
    case Op::Or: binary(" | "); return;
    case Op::Until: binary(" U "); return;
    case Op::Release: binary(" R "); return;
    case Op::Exists: prefix("E " + f.name() + " "); return;
    case Op::Forall: prefix("A " + f.name() + " "); return;
    case Op::Bind: prefix("(" + f.agent() + "," + f.name() + ") "); return;
    case Op::Next:
        out += "X ";
        print_rec(f.body(), out, tail);
        return;
    }
}

} // namespace

std::string print(const Formula& phi)
{
    std::string out;
    print_rec(phi, out, true);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& phi) { return os << print(phi); }

} // namespace tristrat
