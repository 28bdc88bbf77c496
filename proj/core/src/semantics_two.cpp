#include "tristrat/semantics.hpp"

#include "eval_common.hpp"
#include "fixpoint.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tristrat {
namespace {

using namespace detail;

class Eval2 {
public:
    Eval2(const ConcreteCgs& g, const EvalOptions& opts)
        : g_(g), opts_(opts), budget_(opts.budget),
          deps_(std::set<std::string>(g.agents().begin(), g.agents().end())), env_(g.num_agents()),
          n_(g.num_states())
    {
        union_.resize(n_);
        for (StateId s = 0; s < n_; ++s) {
            for (ProfileId p = 0; p < g.profiles().count(); ++p)
                union_[s].push_back(g.successor(s, p));
            std::sort(union_[s].begin(), union_[s].end());
            union_[s].erase(std::unique(union_[s].begin(), union_[s].end()), union_[s].end());
        }
    }

    Env& env() { return env_; }
    std::uint64_t strategies() const { return budget_.used(); }

    Mask eval(const Formula& f, const Mask& need)
    {
        if (!any(need))
            return Mask(n_, 0);
        if (!f.is_literal() && deps_(f).empty()) {
            auto& [value, known] = memo_[f.id()];
            if (known.empty()) {
                value.assign(n_, 0);
                known.assign(n_, 0);
            }
            Mask missing(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                missing[s] = need[s] && !known[s];
            if (any(missing)) {
                Mask v = dispatch(f, missing);
                for (StateId s = 0; s < n_; ++s)
                    if (missing[s]) {
                        value[s] = v[s];
                        known[s] = 1;
                    }
            }
            return value;
        }
        return dispatch(f, need);
    }

private:
    Mask dispatch(const Formula& f, const Mask& need)
    {
        switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom:
            return literal(f);
        case Op::And:
        case Op::Or: {
            bool conj = f.op() == Op::And;
            Mask l = eval(f.lhs(), need);
            Mask need2(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                need2[s] = need[s] && (conj ? l[s] : !l[s]);
            Mask r = eval(f.rhs(), need2);
            for (StateId s = 0; s < n_; ++s)
                l[s] = conj ? (l[s] && r[s]) : (l[s] || r[s]);
            return l;
        }
        case Op::Bind: {
            ChainGuard guard(env_, g_.agents());
            guard.bind(f.agent(), require_var(env_, f.name()));
            return eval(f.body(), need);
        }
        case Op::Exists:
        case Op::Forall:
            if (opts_.collapse) {
                Block b = analyse_block(f);
                return eval_block(b, b.core, need, f);
            }
            return quantify(f, need);
        case Op::Next:
        case Op::Until:
        case Op::Release:
            return temporal(f, need);
        }
        return Mask(n_, 0);
    }

    Mask literal(const Formula& f)
    {
        bool neg = f.op() == Op::NegAtom;
        Mask out(n_, 0);
        if (f.name() == kTrueAtom || f.name() == kFalseAtom) {
            bool v = (f.name() == kTrueAtom) != neg;
            std::fill(out.begin(), out.end(), v);
            return out;
        }
        auto a = g_.find_atom(f.name());
        if (!a)
            throw UnknownAtom("atom '" + f.name() + "' is not in the model");
        for (StateId s = 0; s < n_; ++s)
            out[s] = g_.label(s, *a) != neg;
        return out;
    }

    Mask quantify(const Formula& f, const Mask& need)
    {
        bool exists = f.op() == Op::Exists;
        const Formula& body = f.body();
        if (!deps_(body).vars.count(f.name())) {
            env_.push_var(f.name(), Strategy{std::vector<ActionId>(n_, 0)});
            Mask v = eval(body, need);
            env_.pop_var();
            return v;
        }
        auto relevant = reachable(n_, need, [&](StateId s, auto&& visit) {
            for (auto t : union_[s])
                visit(t);
        });
        std::vector<ActionId> all(g_.num_actions());
        for (std::size_t a = 0; a < all.size(); ++a)
            all[a] = static_cast<ActionId>(a);
        StrategyOdometer od(n_, std::move(relevant), std::move(all));
        std::size_t slot = env_.push_var(f.name(), od.current());

        Mask out(n_, exists ? 0 : 1);
        Mask pending = need;
        do {
            budget_.spend();
            env_.slot(slot) = od.current();
            Mask v = eval(body, pending);
            bool open = false;
            for (StateId s = 0; s < n_; ++s) {
                if (!pending[s])
                    continue;
                if (exists == static_cast<bool>(v[s])) {
                    out[s] = exists;
                    pending[s] = 0;
                } else {
                    open = true;
                }
            }
            if (!open)
                break;
        } while (od.next());
        env_.pop_var();
        return out;
    }

    /// Final binding of each agent in the chain, as an index into b.vars,
    /// for agents bound to a block variable.
    std::map<std::size_t, std::size_t> block_agents(const Block& b)
    {
        std::map<std::size_t, std::size_t> out;
        ChainGuard probe(env_, g_.agents());
        for (const auto& [agent, var] : b.chain) {
            auto a = probe.index_of_agent(agent);
            if (!a)
                continue;
            auto it = std::find(b.vars.begin(), b.vars.end(), var);
            if (it != b.vars.end())
                out[*a] = static_cast<std::size_t>(it - b.vars.begin());
            else
                out.erase(*a);
        }
        return out;
    }

    Mask eval_block(const Block& b, const Formula& core, const Mask& need, const Formula& top)
    {
        bool forall = b.kind == Op::Forall;
        if ((forall && core.op() == Op::And) || (!forall && core.op() == Op::Or)) {
            Mask l = eval_block(b, core.lhs(), need, top);
            Mask need2(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                need2[s] = need[s] && (forall ? l[s] : !l[s]);
            Mask r = eval_block(b, core.rhs(), need2, top);
            for (StateId s = 0; s < n_; ++s)
                l[s] = forall ? (l[s] && r[s]) : (l[s] || r[s]);
            return l;
        }
        auto owned = block_agents(b);
        std::vector<std::string> varying;
        for (const auto& [a, v] : owned)
            varying.push_back(g_.agents()[a]);

        if (core.is_temporal()) {
            bool independent = !mentions(deps_(core.lhs()), b.vars, varying) &&
                               (core.op() == Op::Next || !mentions(deps_(core.rhs()), b.vars, varying));
            if (independent)
                if (auto v = collapse(b, core, need, owned))
                    return *v;
        } else if (!mentions(deps_(core), b.vars, varying)) {
            // Inner blocks may still bind agents to these variables.
            for (const auto& v : b.vars)
                env_.push_var(v, Strategy{std::vector<ActionId>(n_, 0)});
            auto out = [&] {
                ChainGuard guard(env_, g_.agents());
                for (const auto& [agent, var] : b.chain)
                    guard.bind(agent, require_var(env_, var));
                return eval(core, need);
            }();
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                env_.pop_var();
            return out;
        }
        return quantify(rebuild(b, core, top), need);
    }

    void apply_chain(ChainGuard& guard, const Block& b)
    {
        for (const auto& [agent, var] : b.chain) {
            if (std::find(b.vars.begin(), b.vars.end(), var) != b.vars.end())
                guard.bind(agent, Env::kUnbound);
            else
                guard.bind(agent, require_var(env_, var));
        }
    }

    std::optional<Mask> collapse(const Block& b, const Formula& core, const Mask& need,
                                 const std::map<std::size_t, std::size_t>& owned)
    {
        ChainGuard guard(env_, g_.agents());
        apply_chain(guard, b);
        for (std::size_t a = 0; a < g_.num_agents(); ++a)
            if (!owned.count(a) && env_.agent_slot(a) == Env::kUnbound)
                return std::nullopt;

        // Variables actually steering some agent.
        std::vector<std::size_t> used;
        for (const auto& [a, v] : owned)
            if (std::find(used.begin(), used.end(), v) == used.end())
                used.push_back(v);
        std::size_t k = used.size();
        std::size_t acts = g_.num_actions();
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < k; ++i)
            tuples *= acts;

        ChoiceGraph cg;
        cg.choices.resize(n_);
        std::vector<ActionId> digits(g_.num_agents());
        std::vector<ActionId> tuple(k);
        auto succ_of = [&](StateId s) {
            auto& cs = cg.choices[s];
            for (std::size_t t = 0; t < tuples; ++t) {
                std::size_t rest = t;
                for (std::size_t i = 0; i < k; ++i) {
                    tuple[i] = static_cast<ActionId>(rest % acts);
                    rest /= acts;
                }
                for (std::size_t a = 0; a < g_.num_agents(); ++a) {
                    auto it = owned.find(a);
                    if (it != owned.end()) {
                        auto pos = std::find(used.begin(), used.end(), it->second) - used.begin();
                        digits[a] = tuple[pos];
                    } else {
                        digits[a] = env_.slot(env_.agent_slot(a))(s);
                    }
                }
                cs.push_back({g_.successor(s, g_.profiles().encode(digits))});
            }
            std::sort(cs.begin(), cs.end());
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        };
        cg.domain = reachable(n_, need, [&](StateId s, auto&& visit) {
            succ_of(s);
            for (const auto& c : cg.choices[s])
                visit(c.front());
        });
        budget_.spend();

        Mask dom(n_, 0);
        for (auto s : cg.domain)
            dom[s] = 1;
        Quant q = b.kind == Op::Forall ? Quant::AA : Quant::EE;
        Mask t1 = eval(core.lhs(), dom);
        if (core.op() == Op::Next)
            return next_pos(cg, n_, q, t1);
        Mask t2 = eval(core.rhs(), dom);
        if (core.op() == Op::Until)
            return until_pos(cg, n_, q, t1, t2);
        return release_pos(cg, n_, q, t1, t2, opts_.release);
    }

    /// The block with its core replaced; cached so node identities stay
    /// stable for the dependency cache.
    const Formula& rebuild(const Block& b, const Formula& core, const Formula& top)
    {
        if (core.id() == b.core.id())
            return top;
        auto key = std::make_pair(top.id(), core.id());
        auto it = rebuilt_.find(key);
        if (it != rebuilt_.end())
            return it->second;
        Formula f = core;
        for (auto c = b.chain.rbegin(); c != b.chain.rend(); ++c)
            f = Formula::bind(c->first, c->second, f);
        for (auto v = b.vars.rbegin(); v != b.vars.rend(); ++v)
            f = b.kind == Op::Forall ? Formula::forall(*v, f) : Formula::exists(*v, f);
        return rebuilt_.emplace(key, f).first->second;
    }

    Mask temporal(const Formula& f, const Mask& need)
    {
        for (std::size_t a = 0; a < g_.num_agents(); ++a)
            if (env_.agent_slot(a) == Env::kUnbound)
                throw FreeUnderTemporal("temporal operator reached while agent '" + g_.agents()[a] +
                                        "' has no strategy");
        ChoiceGraph cg;
        cg.choices.resize(n_);
        std::vector<ActionId> digits(g_.num_agents());
        cg.domain = reachable(n_, need, [&](StateId s, auto&& visit) {
            for (std::size_t a = 0; a < digits.size(); ++a)
                digits[a] = env_.slot(env_.agent_slot(a))(s);
            StateId t = g_.successor(s, g_.profiles().encode(digits));
            cg.choices[s] = {{t}};
            visit(t);
        });
        Mask dom(n_, 0);
        for (auto s : cg.domain)
            dom[s] = 1;
        Mask t1 = eval(f.lhs(), dom);
        if (f.op() == Op::Next)
            return next_pos(cg, n_, Quant::AA, t1);
        Mask t2 = eval(f.rhs(), dom);
        if (f.op() == Op::Until)
            return until_pos(cg, n_, Quant::AA, t1, t2);
        return release_pos(cg, n_, Quant::AA, t1, t2, opts_.release);
    }

    struct PairHash {
        std::size_t operator()(const std::pair<const void*, const void*>& p) const
        {
            return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
        }
    };

    const ConcreteCgs& g_;
    EvalOptions opts_;
    Budget budget_;
    DepsCache deps_;
    Env env_;
    std::size_t n_;
    std::vector<std::vector<StateId>> union_;
    std::unordered_map<const void*, std::pair<Mask, Mask>> memo_;
    std::unordered_map<std::pair<const void*, const void*>, Formula, PairHash> rebuilt_;
};

void require_state(std::size_t n, StateId s)
{
    if (s >= n)
        throw UnknownState("state index " + std::to_string(s) + " is out of range");
}

} // namespace

Lasso play(const ConcreteCgs& g, const Assignment& chi, StateId s)
{
    require_state(g.num_states(), s);
    std::vector<const Strategy*> strat;
    for (const auto& a : g.agents()) {
        auto it = chi.agents.find(a);
        if (it == chi.agents.end())
            throw IncompleteAssignment("agent '" + a + "' has no strategy");
        strat.push_back(&it->second);
    }
    std::vector<long> seen(g.num_states(), -1);
    std::vector<StateId> path;
    std::vector<ActionId> digits(g.num_agents());
    StateId cur = s;
    while (seen[cur] < 0) {
        seen[cur] = static_cast<long>(path.size());
        path.push_back(cur);
        for (std::size_t a = 0; a < strat.size(); ++a)
            digits[a] = (*strat[a])(cur);
        cur = g.successor(cur, g.profiles().encode(digits));
    }
    Lasso out;
    out.prefix.assign(path.begin(), path.begin() + seen[cur]);
    out.cycle.assign(path.begin() + seen[cur], path.end());
    return out;
}

bool eval2(const ConcreteCgs& g, const Formula& phi, const Assignment& chi, StateId s, const EvalOptions& opts)
{
    require_state(g.num_states(), s);
    Eval2 ev(g, opts);
    ev.env().load(chi, g.agents());
    Mask need(g.num_states(), 0);
    need[s] = 1;
    return ev.eval(phi, need)[s];
}

bool check2(const ConcreteCgs& g, const Formula& phi, const EvalOptions& opts, CheckStats* stats)
{
    if (!is_sentence(phi, std::set<std::string>(g.agents().begin(), g.agents().end())))
        throw NotASentence("formula has free agents or variables: " + print(phi));
    Eval2 ev(g, opts);
    Mask need(g.num_states(), 0);
    need[g.initial()] = 1;
    bool v = ev.eval(phi, need)[g.initial()];
    if (stats)
        stats->strategies = ev.strategies();
    return v;
}

} // namespace tristrat
