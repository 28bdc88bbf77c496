#include "tristrat/abstraction.hpp"

#include "tristrat/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>

namespace tristrat {
namespace {

/// Orders blocks by their smallest member name and rebuilds class_of.
Partition canonical(const ConcreteCgs& g, std::vector<std::vector<StateId>> blocks)
{
    const auto& names = g.states();
    for (auto& b : blocks)
        std::sort(b.begin(), b.end(), [&](StateId x, StateId y) { return names[x] < names[y]; });
    std::sort(blocks.begin(), blocks.end(),
              [&](const auto& x, const auto& y) { return names[x.front()] < names[y.front()]; });
    Partition p;
    p.class_of.assign(g.num_states(), 0);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (auto s : blocks[i])
            p.class_of[s] = i;
    p.blocks = std::move(blocks);
    return p;
}

} // namespace

Partition Partition::from_blocks(const ConcreteCgs& g, const std::vector<std::vector<std::string>>& blocks)
{
    std::vector<int> seen(g.num_states(), 0);
    std::vector<std::vector<StateId>> ids;
    for (const auto& b : blocks) {
        if (b.empty())
            throw InvalidPartition("partition has an empty block");
        std::vector<StateId> block;
        for (const auto& name : b) {
            auto s = g.find_state(name);
            if (!s)
                throw InvalidPartition("partition names unknown state '" + name + "'");
            if (seen[*s]++)
                throw InvalidPartition("state '" + name + "' appears in more than one block");
            block.push_back(*s);
        }
        ids.push_back(std::move(block));
    }
    for (StateId s = 0; s < g.num_states(); ++s)
        if (!seen[s])
            throw InvalidPartition("state '" + g.states()[s] + "' is in no block");
    return canonical(g, std::move(ids));
}

Partition Partition::from_classes(const ConcreteCgs& g, const std::vector<std::size_t>& class_of)
{
    if (class_of.size() != g.num_states())
        throw InvalidPartition("class map does not cover every state");
    std::map<std::size_t, std::vector<StateId>> groups;
    for (StateId s = 0; s < class_of.size(); ++s)
        groups[class_of[s]].push_back(s);
    std::vector<std::vector<StateId>> blocks;
    for (auto& [k, b] : groups)
        blocks.push_back(std::move(b));
    return canonical(g, std::move(blocks));
}

Partition Partition::singletons(const ConcreteCgs& g)
{
    std::vector<std::size_t> cls(g.num_states());
    for (std::size_t s = 0; s < cls.size(); ++s)
        cls[s] = s;
    return from_classes(g, cls);
}

std::vector<std::vector<std::string>> Partition::names(const ConcreteCgs& g) const
{
    std::vector<std::vector<std::string>> out;
    for (const auto& b : blocks) {
        out.emplace_back();
        for (auto s : b)
            out.back().push_back(g.states()[s]);
    }
    return out;
}

Partition partition_by_atoms(const ConcreteCgs& g, const std::set<std::string>& atoms)
{
    std::vector<std::size_t> idx;
    for (const auto& a : atoms) {
        auto i = g.find_atom(a);
        if (!i)
            throw UnknownAtom("atom '" + a + "' is not in the model");
        idx.push_back(*i);
    }
    std::map<std::vector<bool>, std::size_t> key_to_class;
    std::vector<std::size_t> cls(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        std::vector<bool> key;
        for (auto i : idx)
            key.push_back(g.label(s, i));
        cls[s] = key_to_class.emplace(key, key_to_class.size()).first->second;
    }
    return Partition::from_classes(g, cls);
}

std::vector<ActionId> max_must_actions(std::size_t num_actions,
                                       const std::vector<std::vector<ActionId>>& bad_profiles, bool* heuristic)
{
    std::vector<std::uint32_t> bad_masks;
    for (const auto& p : bad_profiles) {
        std::uint32_t m = 0;
        for (auto a : p)
            m |= 1u << (a % 32);
        bad_masks.push_back(m);
    }
    std::sort(bad_masks.begin(), bad_masks.end());
    bad_masks.erase(std::unique(bad_masks.begin(), bad_masks.end()), bad_masks.end());

    if (num_actions <= 16) {
        if (heuristic)
            *heuristic = false;
        std::size_t full = std::size_t{1} << num_actions;
        // infeasible[S]: some bad profile uses only actions of S.
        std::vector<char> infeasible(full, 0);
        for (auto m : bad_masks)
            infeasible[m] = 1;
        for (std::size_t i = 0; i < num_actions; ++i)
            for (std::size_t s = 0; s < full; ++s)
                if (s & (std::size_t{1} << i))
                    infeasible[s] = infeasible[s] || infeasible[s ^ (std::size_t{1} << i)];
        for (std::size_t k = num_actions + 1; k-- > 0;) {
            // Lexicographically smallest k-combination first.
            std::vector<std::size_t> comb(k);
            for (std::size_t i = 0; i < k; ++i)
                comb[i] = i;
            while (true) {
                std::size_t mask = 0;
                for (auto c : comb)
                    mask |= std::size_t{1} << c;
                if (!infeasible[mask]) {
                    std::vector<ActionId> out;
                    for (auto c : comb)
                        out.push_back(static_cast<ActionId>(c));
                    return out;
                }
                std::size_t i = k;
                while (i > 0 && comb[i - 1] == num_actions - k + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++comb[i - 1];
                for (std::size_t j = i; j < k; ++j)
                    comb[j] = comb[j - 1] + 1;
            }
        }
        return {};
    }

    if (heuristic)
        *heuristic = true;
    std::vector<bool> in(num_actions, true);
    std::vector<std::vector<ActionId>> live = bad_profiles;
    auto blocked = [&](const std::vector<ActionId>& p) {
        return std::all_of(p.begin(), p.end(), [&](ActionId a) { return in[a]; });
    };
    while (true) {
        std::vector<std::size_t> hits(num_actions, 0);
        bool any_bad = false;
        for (const auto& p : live) {
            if (!blocked(p))
                continue;
            any_bad = true;
            std::vector<ActionId> uniq(p);
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            for (auto a : uniq)
                ++hits[a];
        }
        if (!any_bad)
            break;
        auto drop = std::max_element(hits.begin(), hits.end()) - hits.begin();
        in[drop] = false;
    }
    std::vector<ActionId> out;
    for (std::size_t a = 0; a < num_actions; ++a)
        if (in[a])
            out.push_back(static_cast<ActionId>(a));
    return out;
}

Abstraction abstract(const ConcreteCgs& g, const Partition& part)
{
    auto start = std::chrono::steady_clock::now();
    if (part.class_of.size() != g.num_states())
        throw InvalidPartition("partition does not cover the model's states");
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
        if (part.blocks[b].empty())
            throw InvalidPartition("partition has an empty block");
        for (auto s : part.blocks[b])
            if (s >= g.num_states() || part.class_of[s] != b)
                throw InvalidPartition("partition blocks and class map disagree");
    }

    const std::size_t nb = part.blocks.size();
    const ProfileId np = g.profiles().count();
    ThreeCgs::Indexed d;
    d.agents = g.agents();
    d.actions_may = g.actions();
    d.atoms = g.atoms();
    for (const auto& b : part.blocks)
        d.states.push_back(g.states()[b.front()]);
    d.initial = static_cast<StateId>(part.class_of[g.initial()]);
    d.tau_may.assign(nb * np, {});
    d.tau_must.assign(nb * np, {});

    std::vector<char> bad_profile(np, 0);
    for (std::size_t b = 0; b < nb; ++b) {
        for (ProfileId p = 0; p < np; ++p) {
            auto& may = d.tau_may[b * np + p];
            for (auto s : part.blocks[b])
                may.push_back(static_cast<StateId>(part.class_of[g.successor(s, p)]));
            std::sort(may.begin(), may.end());
            may.erase(std::unique(may.begin(), may.end()), may.end());
            // Deterministic successors: every member reaches some state of
            // block C iff all members land in C.
            if (may.size() == 1)
                d.tau_must[b * np + p] = may;
            else
                bad_profile[p] = 1;
        }
    }
    std::vector<std::vector<ActionId>> bad;
    for (ProfileId p = 0; p < np; ++p)
        if (bad_profile[p])
            bad.push_back(g.profiles().decode(p));
    bool heuristic = false;
    for (auto a : max_must_actions(g.num_actions(), bad, &heuristic))
        d.actions_must.push_back(g.actions()[a]);

    d.label.assign(nb * g.atoms().size(), Truth::Undef);
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t a = 0; a < g.atoms().size(); ++a) {
            bool all_true = true, all_false = true;
            for (auto s : part.blocks[b]) {
                bool v = g.label(s, a);
                all_true = all_true && v;
                all_false = all_false && !v;
            }
            d.label[b * g.atoms().size() + a] =
                all_true ? Truth::True : (all_false ? Truth::False : Truth::Undef);
        }

    Abstraction out{ThreeCgs::from_indexed(std::move(d)), {}};
    auto& r = out.report;
    r.concrete_states = g.num_states();
    r.concrete_transitions = g.edge_count();
    r.abstract_states = nb;
    r.may_transitions = out.model.edge_count(Mode::May);
    r.must_transitions = out.model.edge_count(Mode::Must);
    r.must_actions = out.model.actions_must();
    r.heuristic = heuristic;
    r.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<Strategy> lift_strategy_may(const Strategy& f, const Partition& part)
{
    std::vector<std::vector<ActionId>> options;
    for (const auto& b : part.blocks) {
        std::vector<ActionId> acts;
        for (auto s : b)
            acts.push_back(f(s));
        std::sort(acts.begin(), acts.end());
        acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
        options.push_back(std::move(acts));
    }
    std::vector<Strategy> out;
    Strategy cur{std::vector<ActionId>(part.size(), 0)};
    std::vector<std::size_t> digit(part.size(), 0);
    for (std::size_t b = 0; b < part.size(); ++b)
        cur.at[b] = options[b][0];
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < part.size(); ++i) {
            if (++digit[i] < options[i].size()) {
                cur.at[i] = options[i][digit[i]];
                break;
            }
            digit[i] = 0;
            cur.at[i] = options[i][0];
        }
        if (i == part.size())
            break;
    }
    return out;
}

std::vector<Strategy> lift_strategy_must(const Strategy& f, const Partition& part, const ThreeCgs& abstract_model)
{
    std::vector<Strategy> out;
    for (auto& s : lift_strategy_may(f, part))
        if (std::all_of(s.at.begin(), s.at.end(), [&](ActionId a) { return abstract_model.is_must_action(a); }))
            out.push_back(std::move(s));
    return out;
}

Strategy concretize(const Strategy& f, const Partition& part)
{
    Strategy out{std::vector<ActionId>(part.class_of.size(), 0)};
    for (std::size_t s = 0; s < part.class_of.size(); ++s)
        out.at[s] = f(static_cast<StateId>(part.class_of[s]));
    return out;
}

std::string to_json(const AbstractionReport& r)
{
    nlohmann::json j = {
        {"concrete_states", r.concrete_states},
        {"concrete_transitions", r.concrete_transitions},
        {"abstract_states", r.abstract_states},
        {"may_transitions", r.may_transitions},
        {"must_transitions", r.must_transitions},
        {"must_actions", r.must_actions},
        {"heuristic", r.heuristic},
        {"build_seconds", r.build_seconds},
    };
    return j.dump(2);
}

} // namespace tristrat
