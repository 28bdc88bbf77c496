#include "tristrat/semantics.hpp"

#include "eval_common.hpp"
#include "fixpoint.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>
#include <unordered_map>

namespace tristrat {
namespace {

using namespace detail;

Mask is_true(const Valuation& v)
{
    Mask m(v.size(), 0);
    for (std::size_t s = 0; s < v.size(); ++s)
        m[s] = v[s] == Truth::True;
    return m;
}

Mask is_false(const Valuation& v)
{
    Mask m(v.size(), 0);
    for (std::size_t s = 0; s < v.size(); ++s)
        m[s] = v[s] == Truth::False;
    return m;
}

Valuation combine(const Mask& top, const Mask& bot)
{
    Valuation v(top.size(), Truth::Undef);
    for (std::size_t s = 0; s < top.size(); ++s) {
        assert(!(top[s] && bot[s]));
        if (top[s])
            v[s] = Truth::True;
        else if (bot[s])
            v[s] = Truth::False;
    }
    return v;
}

/// Positive and refutation clause of one temporal operator.
Valuation temporal_value(const Formula& f, const ChoiceGraph& may, Quant qmay, const ChoiceGraph& must,
                         Quant qmust, const Valuation& v1, const Valuation* v2, ReleaseMode mode, bool want_top,
                         bool want_bot)
{
    std::size_t n = v1.size();
    Mask top(n, 0), bot(n, 0);
    Mask t1 = is_true(v1), b1 = is_false(v1);
    switch (f.op()) {
    case Op::Next:
        if (want_top)
            top = next_pos(may, n, qmay, t1);
        if (want_bot)
            bot = next_neg(must, n, qmust, b1);
        break;
    case Op::Until:
        if (want_top)
            top = until_pos(may, n, qmay, t1, is_true(*v2));
        if (want_bot)
            bot = until_neg(must, n, qmust, b1, is_false(*v2));
        break;
    case Op::Release:
        if (want_top)
            top = release_pos(may, n, qmay, t1, is_true(*v2), mode);
        if (want_bot)
            bot = release_neg(must, n, qmust, b1, is_false(*v2), mode);
        break;
    default:
        break;
    }
    return combine(top, bot);
}

/// How temporal operators read the model.
enum class Reading : unsigned char {
    Assigned, // the successors induced by the current assignment
    AllMay,   // positive clauses over every may profile at once
    AllMust,  // refutation clauses over must edges present under every profile
};

class Eval3 {
public:
    Eval3(const ThreeCgs& g, const EvalOptions& opts, Reading reading = Reading::Assigned)
        : g_(g), opts_(opts), reading_(reading), budget_(opts.budget),
          deps_(std::set<std::string>(g.agents().begin(), g.agents().end())), env_(g.num_agents()),
          n_(g.num_states())
    {
        union_.resize(n_);
        for (StateId s = 0; s < n_; ++s) {
            for (ProfileId p = 0; p < g.profiles().count(); ++p)
                for (auto t : g.successors(s, p, Mode::May))
                    union_[s].push_back(t);
            std::sort(union_[s].begin(), union_[s].end());
            union_[s].erase(std::unique(union_[s].begin(), union_[s].end()), union_[s].end());
        }
        for (std::size_t a = 0; a < g.num_actions(); ++a) {
            may_actions_.push_back(static_cast<ActionId>(a));
            if (g.is_must_action(static_cast<ActionId>(a)))
                must_actions_.push_back(static_cast<ActionId>(a));
        }
        must_set_.assign(g.num_actions(), false);
        for (auto a : must_actions_)
            must_set_[a] = true;
    }

    Env& env() { return env_; }
    std::uint64_t strategies() const { return budget_.used(); }

    Valuation eval(const Formula& f, const Mask& need)
    {
        if (!any(need))
            return Valuation(n_, Truth::Undef);
        if (!f.is_literal() && deps_(f).empty()) {
            auto& [value, known] = memo_[f.id()];
            if (known.empty()) {
                value.assign(n_, Truth::Undef);
                known.assign(n_, 0);
            }
            Mask missing(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                missing[s] = need[s] && !known[s];
            if (any(missing)) {
                Valuation v = dispatch(f, missing);
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
    Valuation dispatch(const Formula& f, const Mask& need)
    {
        switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom:
            return literal(f);
        case Op::And:
        case Op::Or: {
            bool conj = f.op() == Op::And;
            Valuation l = eval(f.lhs(), need);
            Mask need2(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                need2[s] = need[s] && l[s] != (conj ? Truth::False : Truth::True);
            Valuation r = eval(f.rhs(), need2);
            for (StateId s = 0; s < n_; ++s)
                if (need2[s])
                    l[s] = conj ? tv_and(l[s], r[s]) : tv_or(l[s], r[s]);
            return l;
        }
        case Op::Bind: {
            if (reading_ != Reading::Assigned)
                return eval(f.body(), need);
            ChainGuard guard(env_, g_.agents());
            guard.bind(f.agent(), require_var(env_, f.name()));
            return eval(f.body(), need);
        }
        case Op::Exists:
        case Op::Forall:
            if (reading_ != Reading::Assigned)
                throw UnsupportedFragment("quantifier inside a prefix-shortcut body");
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
        return Valuation(n_, Truth::Undef);
    }

    Valuation literal(const Formula& f)
    {
        bool neg = f.op() == Op::NegAtom;
        if (f.name() == kTrueAtom || f.name() == kFalseAtom) {
            bool v = (f.name() == kTrueAtom) != neg;
            return Valuation(n_, from_bool(v));
        }
        auto a = g_.find_atom(f.name());
        if (!a)
            throw UnknownAtom("atom '" + f.name() + "' is not in the model");
        Valuation out(n_);
        for (StateId s = 0; s < n_; ++s)
            out[s] = neg ? tv_not(g_.label(s, *a)) : g_.label(s, *a);
        return out;
    }

    bool has_must() const { return !must_actions_.empty(); }

    /// Without must actions there is no must strategy: the existential
    /// clause (True for Exists, False for Forall) cannot fire.
    Valuation vacuous(Op kind, Valuation v) const
    {
        if (has_must())
            return v;
        Truth blocked = kind == Op::Exists ? Truth::True : Truth::False;
        for (auto& t : v)
            if (t == blocked)
                t = Truth::Undef;
        return v;
    }

    Valuation quantify(const Formula& f, const Mask& need)
    {
        bool exists = f.op() == Op::Exists;
        const Formula& body = f.body();
        if (!deps_(body).vars.count(f.name())) {
            env_.push_var(f.name(), Strategy{std::vector<ActionId>(n_, 0)});
            Valuation v = eval(body, need);
            env_.pop_var();
            return vacuous(f.op(), std::move(v));
        }
        auto relevant = reachable(n_, need, [&](StateId s, auto&& visit) {
            for (auto t : union_[s])
                visit(t);
        });

        // Exists: `hit` = some must strategy gives True, `all` = every may
        // strategy gives False. Forall swaps True and False.
        Truth hit_value = exists ? Truth::True : Truth::False;
        Truth all_value = exists ? Truth::False : Truth::True;
        Mask hit(n_, 0), all = need;
        std::size_t slot = env_.push_var(f.name(), Strategy{std::vector<ActionId>(n_, 0)});

        auto sweep = [&](StrategyOdometer& od, bool must_phase) {
            do {
                if (!must_phase && has_must() && od.within(must_set_))
                    continue;
                Mask pending(n_, 0);
                bool open = false;
                for (StateId s = 0; s < n_; ++s) {
                    pending[s] = need[s] && !hit[s] && (must_phase || all[s]);
                    open = open || pending[s];
                }
                if (!open)
                    return;
                budget_.spend();
                env_.slot(slot) = od.current();
                Valuation v = eval(body, pending);
                for (StateId s = 0; s < n_; ++s) {
                    if (!pending[s])
                        continue;
                    if (must_phase && v[s] == hit_value)
                        hit[s] = 1;
                    if (v[s] != all_value)
                        all[s] = 0;
                }
            } while (od.next());
        };

        if (has_must()) {
            StrategyOdometer od(n_, relevant, must_actions_);
            sweep(od, true);
        }
        StrategyOdometer od(n_, relevant, may_actions_);
        sweep(od, false);
        env_.pop_var();

        Valuation out(n_, Truth::Undef);
        for (StateId s = 0; s < n_; ++s) {
            if (!need[s])
                continue;
            assert(!(hit[s] && all[s]));
            if (hit[s])
                out[s] = hit_value;
            else if (all[s])
                out[s] = all_value;
        }
        return out;
    }

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

    void apply_chain(ChainGuard& guard, const Block& b)
    {
        for (const auto& [agent, var] : b.chain) {
            if (std::find(b.vars.begin(), b.vars.end(), var) != b.vars.end())
                guard.bind(agent, Env::kUnbound);
            else
                guard.bind(agent, require_var(env_, var));
        }
    }

    Valuation eval_block(const Block& b, const Formula& core, const Mask& need, const Formula& top)
    {
        bool forall = b.kind == Op::Forall;
        if ((forall && core.op() == Op::And) || (!forall && core.op() == Op::Or)) {
            Valuation l = eval_block(b, core.lhs(), need, top);
            Mask need2(n_, 0);
            for (StateId s = 0; s < n_; ++s)
                need2[s] = need[s] && l[s] != (forall ? Truth::False : Truth::True);
            Valuation r = eval_block(b, core.rhs(), need2, top);
            for (StateId s = 0; s < n_; ++s)
                if (need2[s])
                    l[s] = forall ? tv_and(l[s], r[s]) : tv_or(l[s], r[s]);
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
                if (auto v = collapse(b, core, need, owned)) {
                    Mask rest(n_, 0);
                    for (StateId s = 0; s < n_; ++s)
                        rest[s] = need[s] && (*v)[s] == Truth::Undef;
                    if (forall || !any(rest))
                        return *v;
                    // The refutation clause of an existential block is only
                    // approximated; settle the remaining states by enumeration.
                    Valuation e = quantify(rebuild(b, core, top), rest);
                    for (StateId s = 0; s < n_; ++s)
                        if (rest[s])
                            (*v)[s] = e[s];
                    return *v;
                }
        } else if (!mentions(deps_(core), b.vars, varying)) {
            // Inner blocks may still bind agents to these variables.
            for (const auto& v : b.vars)
                env_.push_var(v, Strategy{std::vector<ActionId>(n_, 0)});
            auto out = [&] {
                ChainGuard guard(env_, g_.agents());
                for (const auto& [agent, var] : b.chain)
                    guard.bind(agent, require_var(env_, var));
                return vacuous(b.kind, eval(core, need));
            }();
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                env_.pop_var();
            return out;
        }
        return quantify(rebuild(b, core, top), need);
    }

    /// Builds a choice graph where each choice fixes the block variables
    /// steering some agent; `allowed` bounds their actions, `mode` selects
    /// the successor relation.
    void fill_choices(ChoiceGraph& cg, StateId s, const std::map<std::size_t, std::size_t>& owned,
                      const std::vector<std::size_t>& used, const std::vector<ActionId>& allowed, Mode mode)
    {
        std::size_t k = used.size();
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < k; ++i)
            tuples *= allowed.size();
        std::vector<ActionId> digits(g_.num_agents());
        auto& cs = cg.choices[s];
        cs.clear();
        for (std::size_t t = 0; t < tuples; ++t) {
            std::size_t rest = t;
            for (std::size_t a = 0; a < g_.num_agents(); ++a) {
                auto it = owned.find(a);
                if (it == owned.end())
                    digits[a] = env_.slot(env_.agent_slot(a))(s);
            }
            std::vector<ActionId> tuple(k);
            for (std::size_t i = 0; i < k; ++i) {
                tuple[i] = allowed[rest % allowed.size()];
                rest /= allowed.size();
            }
            for (const auto& [a, v] : owned)
                digits[a] = tuple[std::find(used.begin(), used.end(), v) - used.begin()];
            cs.push_back(g_.successors(s, g_.profiles().encode(digits), mode));
        }
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }

    std::optional<Valuation> collapse(const Block& b, const Formula& core, const Mask& need,
                                      const std::map<std::size_t, std::size_t>& owned)
    {
        ChainGuard guard(env_, g_.agents());
        apply_chain(guard, b);
        for (std::size_t a = 0; a < g_.num_agents(); ++a)
            if (!owned.count(a) && env_.agent_slot(a) == Env::kUnbound)
                return std::nullopt;
        std::vector<std::size_t> used;
        for (const auto& [a, v] : owned)
            if (std::find(used.begin(), used.end(), v) == used.end())
                used.push_back(v);

        bool forall = b.kind == Op::Forall;
        // Positive clause: Forall ranges over may actions on may edges;
        // Exists picks must actions against every may edge.
        // Refutation clause: Forall picks must actions along some must
        // edge; Exists faces every may action (a sound approximation).
        const auto& top_actions = forall ? may_actions_ : must_actions_;
        const auto& bot_actions = forall ? must_actions_ : may_actions_;
        bool want_top = forall || has_must();
        bool want_bot = !forall || has_must();

        ChoiceGraph may, must;
        may.choices.resize(n_);
        must.choices.resize(n_);
        ChoiceGraph reach;
        reach.choices.resize(n_);
        auto domain = reachable(n_, need, [&](StateId s, auto&& visit) {
            fill_choices(reach, s, owned, used, may_actions_, Mode::May);
            for (const auto& c : reach.choices[s])
                for (auto t : c)
                    visit(t);
        });
        for (auto s : domain) {
            if (want_top)
                fill_choices(may, s, owned, used, top_actions, Mode::May);
            if (want_bot)
                fill_choices(must, s, owned, used, bot_actions, Mode::Must);
        }
        may.domain = must.domain = domain;
        budget_.spend();

        Mask dom(n_, 0);
        for (auto s : domain)
            dom[s] = 1;
        Valuation v1 = eval(core.lhs(), dom);
        Valuation v2;
        if (core.op() != Op::Next)
            v2 = eval(core.rhs(), dom);
        return temporal_value(core, may, forall ? Quant::AA : Quant::EA, must, forall ? Quant::EE : Quant::AE, v1,
                              core.op() == Op::Next ? nullptr : &v2, opts_.release, want_top, want_bot);
    }

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

    Valuation temporal(const Formula& f, const Mask& need)
    {
        ChoiceGraph may, must;
        may.choices.resize(n_);
        must.choices.resize(n_);
        if (reading_ == Reading::Assigned) {
            for (std::size_t a = 0; a < g_.num_agents(); ++a)
                if (env_.agent_slot(a) == Env::kUnbound)
                    throw FreeUnderTemporal("temporal operator reached while agent '" + g_.agents()[a] +
                                            "' has no strategy");
            std::vector<ActionId> digits(g_.num_agents());
            may.domain = reachable(n_, need, [&](StateId s, auto&& visit) {
                for (std::size_t a = 0; a < digits.size(); ++a)
                    digits[a] = env_.slot(env_.agent_slot(a))(s);
                ProfileId p = g_.profiles().encode(digits);
                may.choices[s] = {g_.successors(s, p, Mode::May)};
                must.choices[s] = {g_.successors(s, p, Mode::Must)};
                for (auto t : may.choices[s].front())
                    visit(t);
            });
        } else {
            may.domain = reachable(n_, need, [&](StateId s, auto&& visit) {
                may.choices[s] = {union_[s]};
                if (reading_ == Reading::AllMust) {
                    std::vector<StateId> common = g_.successors(s, 0, Mode::Must);
                    for (ProfileId p = 1; p < g_.profiles().count() && !common.empty(); ++p) {
                        const auto& m = g_.successors(s, p, Mode::Must);
                        std::vector<StateId> keep;
                        std::set_intersection(common.begin(), common.end(), m.begin(), m.end(),
                                              std::back_inserter(keep));
                        common = std::move(keep);
                    }
                    must.choices[s] = {common};
                }
                for (auto t : union_[s])
                    visit(t);
            });
        }
        must.domain = may.domain;
        Mask dom(n_, 0);
        for (auto s : may.domain)
            dom[s] = 1;
        Valuation v1 = eval(f.lhs(), dom);
        Valuation v2;
        if (f.op() != Op::Next)
            v2 = eval(f.rhs(), dom);
        return temporal_value(f, may, Quant::AA, must, Quant::EE, v1, f.op() == Op::Next ? nullptr : &v2,
                              opts_.release, reading_ != Reading::AllMust, reading_ != Reading::AllMay);
    }

    struct PairHash {
        std::size_t operator()(const std::pair<const void*, const void*>& p) const
        {
            return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
        }
    };

    const ThreeCgs& g_;
    EvalOptions opts_;
    Reading reading_;
    Budget budget_;
    DepsCache deps_;
    Env env_;
    std::size_t n_;
    std::vector<std::vector<StateId>> union_;
    std::vector<ActionId> may_actions_, must_actions_;
    std::vector<bool> must_set_;
    std::unordered_map<const void*, std::pair<Valuation, Mask>> memo_;
    std::unordered_map<std::pair<const void*, const void*>, Formula, PairHash> rebuilt_;
};

ChoiceGraph single_choice(const std::vector<std::vector<StateId>>& succ)
{
    ChoiceGraph cg;
    cg.choices.resize(succ.size());
    for (StateId s = 0; s < succ.size(); ++s) {
        cg.choices[s] = {succ[s]};
        cg.domain.push_back(s);
    }
    return cg;
}

/// Quantifier prefix of one kind followed by bindings and a quantifier-free
/// body; returns the body.
std::optional<Formula> prefix_body(const Formula& phi, Op kind)
{
    Formula cur = phi;
    while (cur.op() == kind)
        cur = cur.body();
    while (cur.op() == Op::Bind)
        cur = cur.body();
    if (!quantified_variables(cur).empty() || !bound_agents(cur).empty())
        return std::nullopt;
    return cur;
}

} // namespace

InducedGraphs InducedGraphs::of(const ThreeCgs& g, const Assignment& chi)
{
    std::vector<const Strategy*> strat;
    for (const auto& a : g.agents()) {
        auto it = chi.agents.find(a);
        if (it == chi.agents.end())
            throw IncompleteAssignment("agent '" + a + "' has no strategy");
        strat.push_back(&it->second);
    }
    InducedGraphs ig;
    std::vector<ActionId> digits(g.num_agents());
    for (StateId s = 0; s < g.num_states(); ++s) {
        for (std::size_t a = 0; a < strat.size(); ++a)
            digits[a] = (*strat[a])(s);
        ProfileId p = g.profiles().encode(digits);
        ig.joint.push_back(p);
        ig.may_succ.push_back(g.successors(s, p, Mode::May));
        ig.must_succ.push_back(g.successors(s, p, Mode::Must));
    }
    return ig;
}

Truth next_value(const InducedGraphs& ig, const Valuation& sub, StateId s)
{
    auto may = single_choice(ig.may_succ);
    auto must = single_choice(ig.must_succ);
    Valuation v = temporal_value(Formula::next(Formula::top()), may, Quant::AA, must, Quant::EE, sub, nullptr,
                                 ReleaseMode::Inclusive, true, true);
    return v[s];
}

Valuation until_value(const InducedGraphs& ig, const Valuation& sub1, const Valuation& sub2)
{
    auto may = single_choice(ig.may_succ);
    auto must = single_choice(ig.must_succ);
    return temporal_value(Formula::until(Formula::top(), Formula::top()), may, Quant::AA, must, Quant::EE, sub1,
                          &sub2, ReleaseMode::Inclusive, true, true);
}

Valuation release_value(const InducedGraphs& ig, const Valuation& sub1, const Valuation& sub2, ReleaseMode mode)
{
    auto may = single_choice(ig.may_succ);
    auto must = single_choice(ig.must_succ);
    return temporal_value(Formula::release(Formula::top(), Formula::top()), may, Quant::AA, must, Quant::EE, sub1,
                          &sub2, mode, true, true);
}

Truth eval3(const ThreeCgs& g, const Formula& phi, const Assignment& chi, StateId s, const EvalOptions& opts)
{
    if (s >= g.num_states())
        throw UnknownState("state index " + std::to_string(s) + " is out of range");
    Eval3 ev(g, opts);
    ev.env().load(chi, g.agents());
    Mask need(g.num_states(), 0);
    need[s] = 1;
    return ev.eval(phi, need)[s];
}

Truth check3(const ThreeCgs& g, const Formula& phi, const EvalOptions& opts, CheckStats* stats)
{
    if (!is_sentence(phi, std::set<std::string>(g.agents().begin(), g.agents().end())))
        throw NotASentence("formula has free agents or variables: " + print(phi));
    Mask need(g.num_states(), 0);
    need[g.initial()] = 1;

    if (opts.shortcuts) {
        // Every strategy is a may strategy, so a True under all may moves at
        // once settles a universal prefix; a False along must edges present
        // under every profile settles an existential one.
        for (auto [kind, reading, verdict] : {std::tuple{Op::Forall, Reading::AllMay, Truth::True},
                                              std::tuple{Op::Exists, Reading::AllMust, Truth::False}}) {
            if (phi.op() != kind)
                continue;
            auto body = prefix_body(phi, kind);
            if (!body)
                continue;
            Eval3 ev(g, opts, reading);
            if (ev.eval(*body, need)[g.initial()] == verdict) {
                if (stats)
                    stats->shortcut = true;
                return verdict;
            }
        }
    }

    Eval3 ev(g, opts);
    Truth v = ev.eval(phi, need)[g.initial()];
    if (stats)
        stats->strategies = ev.strategies();
    return v;
}

} // namespace tristrat
