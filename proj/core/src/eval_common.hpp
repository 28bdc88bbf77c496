#pragma once

#include <algorithm>

// Machinery shared by the two- and three-valued evaluators: the mutable
// strategy environment, dependency caching, quantifier-block analysis and
// strategy enumeration.

#include "tristrat/errors.hpp"
#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"
#include "tristrat/options.hpp"

#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tristrat::detail {

using Mask = std::vector<char>;

inline bool any(const Mask& m)
{
    for (char c : m)
        if (c)
            return true;
    return false;
}

class Budget {
public:
    explicit Budget(std::uint64_t limit) : limit_(limit) {}
    void spend(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > limit_)
            throw BudgetExceeded("strategy-enumeration budget of " + std::to_string(limit_) + " exhausted");
    }
    std::uint64_t used() const noexcept { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

/// Strategies live in a deque so that references stay valid while the
/// variable stack grows and shrinks.
class Env {
public:
    static constexpr long kUnbound = -1;

    explicit Env(std::size_t agents) : agent_(agents, kUnbound) {}

    std::size_t push_var(const std::string& name, Strategy s)
    {
        store_.push_back(std::move(s));
        vars_.emplace_back(name, store_.size() - 1);
        return store_.size() - 1;
    }
    void pop_var()
    {
        vars_.pop_back();
        store_.pop_back();
    }

    long lookup_var(const std::string& name) const
    {
        for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
            if (it->first == name)
                return static_cast<long>(it->second);
        return kUnbound;
    }

    Strategy& slot(std::size_t i) { return store_[i]; }
    const Strategy& slot(std::size_t i) const { return store_[i]; }

    long agent_slot(std::size_t a) const { return agent_[a]; }
    long rebind(std::size_t a, long slot)
    {
        long old = agent_[a];
        agent_[a] = slot;
        return old;
    }
    std::size_t agents() const noexcept { return agent_.size(); }

    bool complete() const
    {
        for (long s : agent_)
            if (s == kUnbound)
                return false;
        return true;
    }

    /// Seeds the environment from a public assignment.
    void load(const Assignment& chi, const std::vector<std::string>& agent_names)
    {
        for (const auto& [name, s] : chi.vars)
            push_var(name, s);
        for (std::size_t a = 0; a < agent_names.size(); ++a) {
            auto it = chi.agents.find(agent_names[a]);
            if (it != chi.agents.end()) {
                store_.push_back(it->second);
                agent_[a] = static_cast<long>(store_.size() - 1);
            }
        }
    }

private:
    std::deque<Strategy> store_;
    std::vector<std::pair<std::string, std::size_t>> vars_;
    std::vector<long> agent_;
};

class DepsCache {
public:
    explicit DepsCache(std::set<std::string> agents) : agents_(std::move(agents)) {}
    const FreeSet& operator()(const Formula& f)
    {
        auto it = cache_.find(f.id());
        if (it == cache_.end())
            it = cache_.emplace(f.id(), dependencies(f, agents_)).first;
        return it->second;
    }

private:
    std::set<std::string> agents_;
    std::unordered_map<const void*, FreeSet> cache_;
};

/// A maximal run of same-kind quantifiers, the bindings right below it and
/// the first node that is neither.
struct Block {
    Op kind;
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, std::string>> chain; // (agent, var)
    Formula core;
};

inline Block analyse_block(const Formula& q)
{
    Block b{q.op(), {}, {}, q};
    Formula cur = q;
    auto captured = [&b](const std::string& v) {
        return std::find(b.vars.begin(), b.vars.end(), v) != b.vars.end() ||
               std::any_of(b.chain.begin(), b.chain.end(), [&v](const auto& c) { return c.second == v; });
    };
    // (a,x) Q y phi == Q y (a,x) phi for y != x, so same-kind quantifiers
    // below the chain join the block unless that would capture a name.
    while (cur.op() == q.op() && !captured(cur.name())) {
        while (cur.op() == q.op() && !captured(cur.name())) {
            b.vars.push_back(cur.name());
            cur = cur.body();
        }
        while (cur.op() == Op::Bind) {
            b.chain.emplace_back(cur.agent(), cur.name());
            cur = cur.body();
        }
    }
    b.core = cur;
    return b;
}

inline bool mentions(const FreeSet& deps, const std::vector<std::string>& vars,
                     const std::vector<std::string>& agents)
{
    for (const auto& v : vars)
        if (deps.vars.count(v))
            return true;
    for (const auto& a : agents)
        if (deps.agents.count(a))
            return true;
    return false;
}

/// Odometer over per-state action choices restricted to `states`, each
/// digit drawn from `allowed`.
class StrategyOdometer {
public:
    StrategyOdometer(std::size_t num_states, std::vector<StateId> states, std::vector<ActionId> allowed)
        : states_(std::move(states)), allowed_(std::move(allowed)), digit_(states_.size(), 0)
    {
        current_.at.assign(num_states, allowed_.empty() ? 0 : allowed_.front());
    }

    bool empty() const noexcept { return allowed_.empty(); }
    const Strategy& current() const noexcept { return current_; }

    /// Advances to the next strategy; false once all were visited.
    bool next()
    {
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (++digit_[i] < allowed_.size()) {
                current_.at[states_[i]] = allowed_[digit_[i]];
                return true;
            }
            digit_[i] = 0;
            current_.at[states_[i]] = allowed_[0];
        }
        return false;
    }

    /// True iff every chosen action lies in `subset` (indexed by action).
    bool within(const std::vector<bool>& subset) const
    {
        for (auto s : states_)
            if (!subset[current_.at[s]])
                return false;
        return true;
    }

private:
    std::vector<StateId> states_;
    std::vector<ActionId> allowed_;
    std::vector<std::size_t> digit_;
    Strategy current_;
};

/// States reachable from `from` along `succ` (inclusive).
template <typename Succ>
std::vector<StateId> reachable(std::size_t n, const Mask& from, Succ&& succ)
{
    Mask seen(n, 0);
    std::vector<StateId> stack, out;
    for (StateId s = 0; s < n; ++s)
        if (from[s]) {
            seen[s] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        out.push_back(s);
        succ(s, [&](StateId t) {
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Applies bindings to the environment and restores them on destruction.
class ChainGuard {
public:
    ChainGuard(Env& env, const std::vector<std::string>& agent_names) : env_(env), names_(agent_names) {}
    ChainGuard(const ChainGuard&) = delete;
    ChainGuard& operator=(const ChainGuard&) = delete;
    ~ChainGuard()
    {
        for (auto it = undo_.rbegin(); it != undo_.rend(); ++it)
            env_.rebind(it->first, it->second);
    }

    void bind(const std::string& agent, long slot)
    {
        auto a = index_of_agent(agent);
        if (!a)
            return; // agents absent from the model carry no strategy
        undo_.emplace_back(*a, env_.rebind(*a, slot));
    }

    std::optional<std::size_t> index_of_agent(const std::string& agent) const
    {
        auto it = std::lower_bound(names_.begin(), names_.end(), agent);
        if (it == names_.end() || *it != agent)
            return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

private:
    Env& env_;
    const std::vector<std::string>& names_;
    std::vector<std::pair<std::size_t, long>> undo_;
};

inline long require_var(const Env& env, const std::string& var)
{
    long slot = env.lookup_var(var);
    if (slot == Env::kUnbound)
        throw IncompleteAssignment("variable '" + var + "' has no strategy");
    return slot;
}

} // namespace tristrat::detail
