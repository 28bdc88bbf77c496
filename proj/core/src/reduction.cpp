#include "tristrat/reduction.hpp"

#include "tristrat/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace tristrat {
namespace {

constexpr std::uint64_t kMaxTableEntries = 50'000'000;

std::string fresh(const std::string& base, const std::set<std::string>& taken)
{
    std::string name = base;
    while (taken.count(name))
        name += "_";
    return name;
}

struct Prefix {
    std::vector<Formula> nodes; // quantifier and binding nodes, outermost first
    Formula body;
};

Prefix split_prefix(const Formula& phi)
{
    Prefix p{{}, phi};
    while (p.body.is_quantifier() || p.body.op() == Op::Bind) {
        p.nodes.push_back(p.body);
        p.body = p.body.body();
    }
    return p;
}

Formula rewrap(const std::vector<Formula>& nodes, Formula body)
{
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        switch (it->op()) {
        case Op::Exists:
            body = Formula::exists(it->name(), body);
            break;
        case Op::Forall:
            body = Formula::forall(it->name(), body);
            break;
        default:
            body = Formula::bind(it->agent(), it->name(), body);
            break;
        }
    }
    return body;
}

/// Translates a quantifier-free body for one side of the split.
class BodyTranslator {
public:
    BodyTranslator(bool sat, std::string nature, std::string live, std::set<std::string> taken_vars)
        : sat_(sat), nature_(std::move(nature)), live_(std::move(live)), taken_(std::move(taken_vars))
    {
    }

    Formula operator()(const Formula& f)
    {
        switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom:
            return literal(f);
        case Op::And:
            return Formula::conj((*this)(f.lhs()), (*this)(f.rhs()));
        case Op::Or:
            return Formula::disj((*this)(f.lhs()), (*this)(f.rhs()));
        case Op::Next:
        case Op::Until:
        case Op::Release:
            return temporal(f);
        default:
            throw UnsupportedFragment("quantifier or binding inside the temporal body");
        }
    }

    std::string fresh_var()
    {
        std::string v = fresh("nature_" + std::to_string(counter_++), taken_);
        taken_.insert(v);
        return v;
    }

private:
    Formula literal(const Formula& f)
    {
        bool neg = f.op() == Op::NegAtom;
        if (f.name() == kTrueAtom || f.name() == kFalseAtom)
            return ((f.name() == kTrueAtom) != neg) ? Formula::top() : Formula::bottom();
        return Formula::atom(f.name() + (neg ? "_false" : "_true"));
    }

    /// Some infinite path avoids the stuck state.
    Formula infinite()
    {
        std::string m = fresh_var();
        return Formula::exists(m, Formula::bind(nature_, m, Formula::globally(Formula::atom(live_))));
    }

    Formula temporal(const Formula& f)
    {
        Formula l = (*this)(f.lhs());
        std::string n = fresh_var();
        if (sat_) {
            Formula t = f.op() == Op::Next    ? Formula::next(l)
                        : f.op() == Op::Until ? Formula::until(l, (*this)(f.rhs()))
                                              : Formula::release(l, (*this)(f.rhs()));
            return Formula::forall(n, Formula::bind(nature_, n, t));
        }
        // Refutation needs an infinite must path: the witness must be able
        // to continue forever from wherever the operator is discharged.
        Formula t = Formula::top();
        if (f.op() == Op::Next) {
            t = Formula::next(Formula::conj(l, infinite()));
        } else {
            Formula r = (*this)(f.rhs());
            if (f.op() == Op::Until)
                t = Formula::until(l, Formula::conj(r, infinite()));
            else
                t = Formula::release(Formula::conj(l, infinite()), Formula::conj(r, Formula::atom(live_)));
        }
        return Formula::exists(n, Formula::bind(nature_, n, t));
    }

    bool sat_;
    std::string nature_, live_;
    std::set<std::string> taken_;
    int counter_ = 0;
};

/// Sentence with constant truth value over the given agents.
Formula constant_sentence(bool value, const std::vector<std::string>& agents, const std::string& var)
{
    Formula f = value ? Formula::top() : Formula::bottom();
    for (auto it = agents.rbegin(); it != agents.rend(); ++it)
        f = Formula::bind(*it, var, f);
    return Formula::forall(var, f);
}

ConcreteCgs build_side(const ThreeCgs& g, bool sat, const std::set<std::string>& restricted,
                       const std::string& nature, const std::string& live, const std::string& stuck)
{
    const Mode mode = sat ? Mode::May : Mode::Must;
    const std::size_t n = g.num_states();
    const std::size_t acts = g.num_actions();
    std::size_t delta = 1;
    for (StateId s = 0; s < n; ++s)
        for (ProfileId p = 0; p < g.profiles().count(); ++p)
            delta = std::max(delta, g.successors(s, p, mode).size());
    const std::size_t alphabet = std::max(acts, delta);

    ConcreteCgs::Indexed d;
    d.agents = g.agents();
    d.agents.push_back(nature);
    d.states = g.states();
    d.states.push_back(stuck);
    d.initial = g.initial();
    std::set<std::string> act_names(g.actions_may().begin(), g.actions_may().end());
    d.actions = g.actions_may();
    for (std::size_t i = acts; i < alphabet; ++i) {
        std::string pad = fresh("pad" + std::to_string(i - acts), act_names);
        act_names.insert(pad);
        d.actions.push_back(pad);
    }
    for (const auto& p : g.atoms()) {
        d.atoms.push_back(p + "_true");
        d.atoms.push_back(p + "_false");
    }
    d.atoms.push_back(live);

    ProfileCodec codec(d.agents.size(), alphabet);
    if ((n + 1) * codec.count() > kMaxTableEntries)
        throw TooLarge("split model would need " + std::to_string((n + 1) * codec.count()) + " transitions");

    std::vector<bool> is_restricted(g.num_agents());
    for (std::size_t a = 0; a < g.num_agents(); ++a)
        is_restricted[a] = restricted.count(g.agents()[a]) > 0;

    const StateId stuck_id = static_cast<StateId>(n);
    d.transition.assign((n + 1) * codec.count(), stuck_id);
    std::vector<ActionId> eff(g.num_agents());
    for (ProfileId p = 0; p < codec.count(); ++p) {
        auto digits = codec.decode(p);
        bool blocked = false;
        for (std::size_t a = 0; a < g.num_agents(); ++a) {
            eff[a] = digits[a] < acts ? digits[a] : 0;
            if (is_restricted[a] && !g.is_must_action(eff[a]))
                blocked = true;
        }
        if (blocked)
            continue;
        ProfileId orig = g.profiles().encode(eff);
        std::size_t choice = digits.back();
        for (StateId s = 0; s < n; ++s) {
            const auto& succ = g.successors(s, orig, mode);
            if (!succ.empty())
                d.transition[s * codec.count() + p] = succ[std::min(choice, succ.size() - 1)];
        }
    }

    const std::size_t na = d.atoms.size();
    d.label.assign((n + 1) * na, false);
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < g.atoms().size(); ++i) {
            d.label[s * na + 2 * i] = g.label(s, i) == Truth::True;
            d.label[s * na + 2 * i + 1] = g.label(s, i) == Truth::False;
        }
        d.label[s * na + na - 1] = true;
    }
    return ConcreteCgs::from_indexed(std::move(d));
}

} // namespace

Classification classify(const Formula& phi)
{
    std::map<std::string, Op> kind;
    std::map<std::string, std::string> agent_var;
    Formula cur = phi;
    while (cur.is_quantifier() || cur.op() == Op::Bind) {
        if (cur.is_quantifier()) {
            if (kind.count(cur.name()))
                throw UnsupportedFragment("variable '" + cur.name() + "' is quantified twice");
            kind[cur.name()] = cur.op();
        } else {
            if (agent_var.count(cur.agent()))
                throw UnsupportedFragment("agent '" + cur.agent() + "' is bound twice");
            if (!kind.count(cur.name()))
                throw UnsupportedFragment("binding (" + cur.agent() + "," + cur.name() +
                                          ") refers to a variable not quantified before it");
            agent_var[cur.agent()] = cur.name();
        }
        cur = cur.body();
    }
    if (!quantified_variables(cur).empty() || !bound_agents(cur).empty())
        throw UnsupportedFragment("quantifier or binding below a Boolean or temporal operator");
    Classification c;
    for (const auto& [agent, var] : agent_var)
        (kind[var] == Op::Exists ? c.e_agents : c.u_agents).insert(agent);
    return c;
}

SplitInstance split(const ThreeCgs& g, const Formula& phi, ReleaseMode mode)
{
    std::set<std::string> agents(g.agents().begin(), g.agents().end());
    if (!is_sentence(phi, agents))
        throw NotASentence("formula has free agents or variables: " + print(phi));
    Classification cls = classify(phi);

    std::string nature = fresh("Nature", agents);
    std::set<std::string> atom_names;
    for (const auto& p : g.atoms()) {
        atom_names.insert(p + "_true");
        atom_names.insert(p + "_false");
    }
    std::string live = fresh("live", atom_names);
    std::set<std::string> state_names(g.states().begin(), g.states().end());
    std::string stuck = fresh("stuck", state_names);

    std::set<std::string> taken = quantified_variables(phi);
    taken.insert(agents.begin(), agents.end());
    taken.insert(nature);

    std::vector<std::string> all_agents = g.agents();
    all_agents.push_back(nature);
    std::sort(all_agents.begin(), all_agents.end());

    auto side = [&](const Formula& f, bool sat) {
        Prefix pre = split_prefix(f);
        BodyTranslator tr(sat, nature, live, taken);
        Formula body = tr(pre.body);
        // Every temporal operator rebinds Nature, so the outer binding is
        // never read. Reusing a prefix variable keeps the prefix one block.
        auto q = std::find_if(pre.nodes.begin(), pre.nodes.end(), [](const Formula& n) { return n.is_quantifier(); });
        if (q != pre.nodes.end())
            return rewrap(pre.nodes, Formula::bind(nature, q->name(), body));
        std::string top = tr.fresh_var();
        return rewrap(pre.nodes, Formula::forall(top, Formula::bind(nature, top, body)));
    };

    bool has_exists = false, has_forall = false;
    for (Formula cur = phi; cur.is_quantifier() || cur.op() == Op::Bind; cur = cur.body()) {
        has_exists = has_exists || cur.op() == Op::Exists;
        has_forall = has_forall || cur.op() == Op::Forall;
    }
    std::string const_var = fresh("z", taken);

    // Without must actions no must strategy exists: an existential
    // quantifier cannot be witnessed (sat side), a universal one cannot be
    // refuted (violation side).
    bool no_must = g.num_must_actions() == 0;
    Formula sat_formula = no_must && has_exists ? constant_sentence(false, all_agents, const_var) : side(phi, true);
    Formula viol_formula =
        no_must && has_forall ? constant_sentence(false, all_agents, const_var) : side(negate(phi, mode), false);

    return SplitInstance{
        build_side(g, true, cls.e_agents, nature, live, stuck),
        sat_formula,
        build_side(g, false, cls.u_agents, nature, live, stuck),
        viol_formula,
        cls.e_agents,
        cls.u_agents,
        nature,
    };
}

Truth combine(bool sat, bool viol)
{
    if (sat && viol)
        throw InconsistentSplit("both the satisfaction and the violation check succeeded");
    if (sat)
        return Truth::True;
    if (viol)
        return Truth::False;
    return Truth::Undef;
}

Truth check_split(const ThreeCgs& g, const Formula& phi, const EvalOptions& opts, CheckStats* stats)
{
    SplitInstance inst = split(g, phi, opts.release);
    CheckStats s1, s2;
    bool sat = check2(inst.sat_model, inst.sat_formula, opts, &s1);
    bool viol = check2(inst.viol_model, inst.viol_formula, opts, &s2);
    if (stats)
        stats->strategies = s1.strategies + s2.strategies;
    return combine(sat, viol);
}

std::string to_json(const SplitInstance& inst)
{
    nlohmann::json j;
    j["nature"] = inst.nature;
    j["e_agents"] = inst.e_agents;
    j["u_agents"] = inst.u_agents;
    j["sat"] = {{"model", nlohmann::json::parse(save(inst.sat_model))}, {"formula", print(inst.sat_formula)}};
    j["viol"] = {{"model", nlohmann::json::parse(save(inst.viol_model))}, {"formula", print(inst.viol_formula)}};
    return j.dump(1);
}

} // namespace tristrat
