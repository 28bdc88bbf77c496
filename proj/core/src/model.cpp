#include "tristrat/model.hpp"

#include "tristrat/errors.hpp"
#include "tristrat/formula.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace tristrat {

bool Assignment::complete(std::span<const std::string> model_agents) const
{
    return std::all_of(model_agents.begin(), model_agents.end(),
                       [&](const std::string& a) { return agents.count(a) > 0; });
}

ProfileCodec::ProfileCodec(std::size_t agents, std::size_t actions)
    : agents_(agents), actions_(actions), weight_(agents, 1)
{
    count_ = 1;
    for (std::size_t i = agents; i-- > 0;) {
        weight_[i] = count_;
        count_ *= actions;
    }
}

ProfileId ProfileCodec::encode(std::span<const ActionId> profile) const
{
    ProfileId id = 0;
    for (std::size_t i = 0; i < agents_; ++i)
        id += weight_[i] * profile[i];
    return id;
}

std::vector<ActionId> ProfileCodec::decode(ProfileId id) const
{
    std::vector<ActionId> out(agents_);
    for (std::size_t i = 0; i < agents_; ++i)
        out[i] = digit(id, i);
    return out;
}

ActionId ProfileCodec::digit(ProfileId id, std::size_t agent) const
{
    return static_cast<ActionId>((id / weight_[agent]) % actions_);
}

namespace {

// Sorts a name table and returns old index -> new index.
std::vector<std::uint32_t> canonicalize(std::vector<std::string>& names, const char* what)
{
    std::vector<std::uint32_t> order(names.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
    std::vector<std::uint32_t> to_new(names.size());
    std::vector<std::string> sorted;
    sorted.reserve(names.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        to_new[order[i]] = i;
        sorted.push_back(std::move(names[order[i]]));
    }
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].empty())
            throw ValidationError(std::string("empty ") + what + " name");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw ValidationError(std::string("duplicate ") + what + " '" + sorted[i] + "'");
    }
    names = std::move(sorted);
    return to_new;
}

void check_atoms(const std::vector<std::string>& atoms)
{
    for (const auto& a : atoms)
        if (a == kTrueAtom || a == kFalseAtom)
            throw ValidationError("atom name '" + a + "' is reserved");
}

// new profile id -> old profile id, given the agent and action permutations.
std::vector<ProfileId> profile_map(const ProfileCodec& codec, const std::vector<std::uint32_t>& agent_to_new,
                                   const std::vector<std::uint32_t>& action_to_new)
{
    const std::size_t m = codec.agents();
    std::vector<std::uint32_t> agent_to_old(m), action_to_old(codec.actions());
    for (std::uint32_t i = 0; i < m; ++i)
        agent_to_old[agent_to_new[i]] = i;
    for (std::uint32_t i = 0; i < action_to_new.size(); ++i)
        action_to_old[action_to_new[i]] = i;
    std::vector<ProfileId> map(codec.count());
    std::vector<ActionId> old_digits(m);
    for (ProfileId p = 0; p < codec.count(); ++p) {
        for (std::size_t a = 0; a < m; ++a)
            old_digits[agent_to_old[a]] = static_cast<ActionId>(action_to_old[codec.digit(p, a)]);
        map[p] = codec.encode(old_digits);
    }
    return map;
}

template <typename Names>
std::optional<std::uint32_t> lookup(const Names& names, std::string_view key)
{
    auto it = std::lower_bound(names.begin(), names.end(), key,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == names.end() || *it != key)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - names.begin());
}

void check_basic(const std::vector<std::string>& agents, const std::vector<std::string>& states,
                 StateId initial, std::size_t actions)
{
    if (agents.empty())
        throw ValidationError("model has no agents");
    if (states.empty())
        throw ValidationError("model has no states");
    if (actions == 0)
        throw ValidationError("model has no actions");
    if (actions > 0xFFFF)
        throw ValidationError("too many actions");
    if (initial >= states.size())
        throw ValidationError("initial state is not a state");
}

} // namespace

ConcreteCgs ConcreteCgs::from_indexed(Indexed d)
{
    check_basic(d.agents, d.states, d.initial, d.actions.size());
    const ProfileCodec old_codec(d.agents.size(), d.actions.size());
    const std::size_t n = d.states.size();
    if (d.transition.size() != n * old_codec.count())
        throw ValidationError("transition not total");
    if (d.label.size() != n * d.atoms.size())
        throw ValidationError("label not total");
    for (auto t : d.transition)
        if (t >= n)
            throw ValidationError("transition target is not a state");

    ConcreteCgs g;
    auto agent_map = canonicalize(d.agents, "agent");
    auto state_map = canonicalize(d.states, "state");
    auto action_map = canonicalize(d.actions, "action");
    auto atom_map = canonicalize(d.atoms, "atom");
    check_atoms(d.atoms);

    g.agents_ = std::move(d.agents);
    g.states_ = std::move(d.states);
    g.actions_ = std::move(d.actions);
    g.atoms_ = std::move(d.atoms);
    g.initial_ = state_map[d.initial];
    g.codec_ = ProfileCodec(g.agents_.size(), g.actions_.size());

    const auto pmap = profile_map(g.codec_, agent_map, action_map);
    const ProfileId P = g.codec_.count();
    g.transition_.assign(n * P, 0);
    g.label_.assign(n * g.atoms_.size(), false);
    for (StateId s_old = 0; s_old < n; ++s_old) {
        const StateId s = state_map[s_old];
        for (ProfileId p = 0; p < P; ++p)
            g.transition_[s * P + p] = state_map[d.transition[s_old * P + pmap[p]]];
        for (std::size_t a = 0; a < atom_map.size(); ++a)
            g.label_[s * g.atoms_.size() + atom_map[a]] = d.label[s_old * atom_map.size() + a];
    }
    return g;
}

std::optional<StateId> ConcreteCgs::find_state(std::string_view name) const { return lookup(states_, name); }
std::optional<ActionId> ConcreteCgs::find_action(std::string_view name) const
{
    auto r = lookup(actions_, name);
    return r ? std::optional<ActionId>(static_cast<ActionId>(*r)) : std::nullopt;
}
std::optional<std::size_t> ConcreteCgs::find_atom(std::string_view name) const { return lookup(atoms_, name); }
std::optional<std::size_t> ConcreteCgs::find_agent(std::string_view name) const { return lookup(agents_, name); }

std::size_t ConcreteCgs::edge_count() const
{
    std::size_t edges = 0;
    std::vector<StateId> succ;
    for (StateId s = 0; s < num_states(); ++s) {
        succ.assign(transition_.begin() + s * codec_.count(), transition_.begin() + (s + 1) * codec_.count());
        std::sort(succ.begin(), succ.end());
        edges += static_cast<std::size_t>(std::unique(succ.begin(), succ.end()) - succ.begin());
    }
    return edges;
}

ThreeCgs ThreeCgs::from_indexed(Indexed d)
{
    check_basic(d.agents, d.states, d.initial, d.actions_may.size());
    const ProfileCodec old_codec(d.agents.size(), d.actions_may.size());
    const std::size_t n = d.states.size();
    if (d.tau_may.size() != n * old_codec.count())
        throw ValidationError("may transition not total");
    if (d.tau_must.size() != n * old_codec.count())
        throw ValidationError("must transition not total");
    if (d.label.size() != n * d.atoms.size())
        throw ValidationError("label not total");

    ThreeCgs g;
    auto agent_map = canonicalize(d.agents, "agent");
    auto state_map = canonicalize(d.states, "state");
    auto action_map = canonicalize(d.actions_may, "action");
    auto atom_map = canonicalize(d.atoms, "atom");
    check_atoms(d.atoms);

    g.agents_ = std::move(d.agents);
    g.states_ = std::move(d.states);
    g.actions_ = std::move(d.actions_may);
    g.atoms_ = std::move(d.atoms);
    g.initial_ = state_map[d.initial];
    g.codec_ = ProfileCodec(g.agents_.size(), g.actions_.size());
    g.must_.assign(g.actions_.size(), false);
    for (const auto& a : d.actions_must) {
        auto idx = lookup(g.actions_, a);
        if (!idx)
            throw ValidationError("must action '" + a + "' is not a may action");
        g.must_[*idx] = true;
    }

    const auto pmap = profile_map(g.codec_, agent_map, action_map);
    const ProfileId P = g.codec_.count();
    g.tau_may_.assign(n * P, {});
    g.tau_must_.assign(n * P, {});
    g.label_.assign(n * g.atoms_.size(), Truth::Undef);
    auto remap = [&](const std::vector<StateId>& in) {
        std::vector<StateId> out;
        out.reserve(in.size());
        for (auto t : in) {
            if (t >= n)
                throw ValidationError("transition target is not a state");
            out.push_back(state_map[t]);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    for (StateId s_old = 0; s_old < n; ++s_old) {
        const StateId s = state_map[s_old];
        for (ProfileId p = 0; p < P; ++p) {
            g.tau_may_[s * P + p] = remap(d.tau_may[s_old * P + pmap[p]]);
            g.tau_must_[s * P + p] = remap(d.tau_must[s_old * P + pmap[p]]);
        }
        for (std::size_t a = 0; a < atom_map.size(); ++a)
            g.label_[s * g.atoms_.size() + atom_map[a]] = d.label[s_old * atom_map.size() + a];
    }

    for (StateId s = 0; s < n; ++s) {
        for (ProfileId p = 0; p < P; ++p) {
            const auto& may = g.tau_may_[s * P + p];
            const auto& must = g.tau_must_[s * P + p];
            if (may.empty())
                throw ValidationError("may totality: empty may successors at state '" + g.states_[s] + "'");
            if (!std::includes(may.begin(), may.end(), must.begin(), must.end()))
                throw ValidationError("must ⊄ may at state '" + g.states_[s] + "'");
            if (must.empty() && g.is_must_profile(p))
                throw ValidationError("must totality: empty must successors on a must profile at state '" +
                                      g.states_[s] + "'");
        }
    }
    return g;
}

std::vector<std::string> ThreeCgs::actions_must() const
{
    std::vector<std::string> out;
    for (std::size_t a = 0; a < actions_.size(); ++a)
        if (must_[a])
            out.push_back(actions_[a]);
    return out;
}

std::size_t ThreeCgs::num_must_actions() const noexcept
{
    return static_cast<std::size_t>(std::count(must_.begin(), must_.end(), true));
}

bool ThreeCgs::is_must_profile(ProfileId p) const
{
    for (std::size_t i = 0; i < codec_.agents(); ++i)
        if (!must_[codec_.digit(p, i)])
            return false;
    return true;
}

const std::vector<StateId>& ThreeCgs::successors(std::string_view state, std::span<const std::string> profile,
                                                 Mode mode) const
{
    auto s = find_state(state);
    if (!s)
        throw UnknownState("unknown state '" + std::string(state) + "'");
    if (profile.size() != agents_.size())
        throw UnknownAction("action profile must name one action per agent");
    std::vector<ActionId> digits;
    for (const auto& a : profile) {
        auto id = find_action(a);
        if (!id)
            throw UnknownAction("unknown action '" + a + "'");
        digits.push_back(*id);
    }
    return successors(*s, codec_.encode(digits), mode);
}

std::optional<StateId> ThreeCgs::find_state(std::string_view name) const { return lookup(states_, name); }
std::optional<ActionId> ThreeCgs::find_action(std::string_view name) const
{
    auto r = lookup(actions_, name);
    return r ? std::optional<ActionId>(static_cast<ActionId>(*r)) : std::nullopt;
}
std::optional<std::size_t> ThreeCgs::find_atom(std::string_view name) const { return lookup(atoms_, name); }
std::optional<std::size_t> ThreeCgs::find_agent(std::string_view name) const { return lookup(agents_, name); }

std::size_t ThreeCgs::edge_count(Mode mode) const
{
    std::size_t edges = 0;
    std::vector<StateId> succ;
    for (StateId s = 0; s < num_states(); ++s) {
        succ.clear();
        for (ProfileId p = 0; p < codec_.count(); ++p) {
            const auto& out = successors(s, p, mode);
            succ.insert(succ.end(), out.begin(), out.end());
        }
        std::sort(succ.begin(), succ.end());
        edges += static_cast<std::size_t>(std::unique(succ.begin(), succ.end()) - succ.begin());
    }
    return edges;
}

ThreeCgs embed(const ConcreteCgs& g)
{
    ThreeCgs::Indexed d;
    d.agents = g.agents();
    d.states = g.states();
    d.initial = g.initial();
    d.actions_may = g.actions();
    d.actions_must = g.actions();
    d.atoms = g.atoms();
    const ProfileId P = g.profiles().count();
    d.tau_may.resize(g.num_states() * P);
    for (StateId s = 0; s < g.num_states(); ++s)
        for (ProfileId p = 0; p < P; ++p)
            d.tau_may[s * P + p] = {g.successor(s, p)};
    d.tau_must = d.tau_may;
    d.label.resize(g.num_states() * g.atoms().size());
    for (StateId s = 0; s < g.num_states(); ++s)
        for (std::size_t a = 0; a < g.atoms().size(); ++a)
            d.label[s * g.atoms().size() + a] = from_bool(g.label(s, a));
    return ThreeCgs::from_indexed(std::move(d));
}

} // namespace tristrat
