#include "generators.hpp"

#include "tristrat/random_formula.hpp"

#include <algorithm>
#include <numeric>

namespace tristrat::test {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

std::vector<std::string> agent_names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

/// Nonempty random subset of [0, n) when nonempty is set.
std::vector<StateId> random_subset(Rng& rng, std::size_t n, bool nonempty)
{
    std::vector<StateId> out;
    do {
        out.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (coin(rng))
                out.push_back(static_cast<StateId>(i));
    } while (nonempty && out.empty());
    return out;
}

} // namespace

ConcreteCgs random_concrete(Rng& rng, const Shape& shape)
{
    ConcreteCgs::Indexed d;
    std::size_t n = uniform(rng, 1, shape.max_states);
    d.agents = agent_names(uniform(rng, 1, shape.max_agents));
    d.states = numbered("s", n);
    d.actions = numbered("act", uniform(rng, 1, shape.max_actions));
    d.atoms = shape.atoms;
    d.initial = static_cast<StateId>(uniform(rng, 0, n - 1));
    ProfileCodec codec(d.agents.size(), d.actions.size());
    for (std::size_t i = 0; i < n * codec.count(); ++i)
        d.transition.push_back(static_cast<StateId>(uniform(rng, 0, n - 1)));
    for (std::size_t i = 0; i < n * d.atoms.size(); ++i)
        d.label.push_back(coin(rng));
    return ConcreteCgs::from_indexed(std::move(d));
}

ThreeCgs random_three(Rng& rng, const Shape& shape)
{
    ThreeCgs::Indexed d;
    std::size_t n = uniform(rng, 1, shape.max_states);
    d.agents = agent_names(uniform(rng, 1, shape.max_agents));
    d.states = numbered("s", n);
    d.actions_may = numbered("act", uniform(rng, 1, shape.max_actions));
    std::vector<bool> must(d.actions_may.size());
    for (std::size_t a = 0; a < must.size(); ++a) {
        must[a] = coin(rng);
        if (must[a])
            d.actions_must.push_back(d.actions_may[a]);
    }
    d.atoms = shape.atoms;
    d.initial = static_cast<StateId>(uniform(rng, 0, n - 1));
    ProfileCodec codec(d.agents.size(), d.actions_may.size());
    for (std::size_t s = 0; s < n; ++s)
        for (ProfileId p = 0; p < codec.count(); ++p) {
            auto may = random_subset(rng, n, true);
            bool must_profile = true;
            for (auto digit : codec.decode(p))
                must_profile = must_profile && must[digit];
            std::vector<StateId> sub;
            do {
                sub.clear();
                for (auto t : may)
                    if (coin(rng))
                        sub.push_back(t);
            } while (must_profile && sub.empty());
            d.tau_may.push_back(std::move(may));
            d.tau_must.push_back(std::move(sub));
        }
    for (std::size_t i = 0; i < n * d.atoms.size(); ++i)
        d.label.push_back(static_cast<Truth>(uniform(rng, 0, 2)));
    return ThreeCgs::from_indexed(std::move(d));
}

Partition random_partition(Rng& rng, const ConcreteCgs& g)
{
    std::size_t k = uniform(rng, 1, g.num_states());
    std::vector<std::size_t> cls(g.num_states());
    // Every class gets one member so exactly k blocks come out.
    std::vector<std::size_t> order(g.num_states());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i)
        cls[order[i]] = i < k ? i : uniform(rng, 0, k - 1);
    return Partition::from_classes(g, cls);
}

Strategy random_strategy(Rng& rng, std::size_t states, std::size_t actions)
{
    Strategy f;
    for (std::size_t s = 0; s < states; ++s)
        f.at.push_back(static_cast<ActionId>(uniform(rng, 0, actions - 1)));
    return f;
}

Assignment random_complete(Rng& rng, std::size_t states, std::size_t actions, std::span<const std::string> agents)
{
    Assignment chi;
    for (const auto& a : agents)
        chi.agents[a] = random_strategy(rng, states, actions);
    return chi;
}

Formula random_ast(Rng& rng, std::size_t depth, std::span<const std::string> vars,
                   std::span<const std::string> agents, std::span<const std::string> atoms)
{
    auto pick = [&](std::span<const std::string> xs) { return xs[uniform(rng, 0, xs.size() - 1)]; };
    if (depth <= 1) {
        std::string a = uniform(rng, 0, 5) == 0 ? (coin(rng) ? "true" : "false") : pick(atoms);
        return coin(rng) ? Formula::atom(a) : Formula::neg_atom(a);
    }
    auto sub = [&] { return random_ast(rng, depth - 1, vars, agents, atoms); };
    switch (uniform(rng, 0, 8)) {
    case 0: return Formula::conj(sub(), sub());
    case 1: return Formula::disj(sub(), sub());
    case 2: return Formula::exists(pick(vars), sub());
    case 3: return Formula::forall(pick(vars), sub());
    case 4: return Formula::bind(pick(agents), pick(vars), sub());
    case 5: return Formula::next(sub());
    case 6: return Formula::until(sub(), sub());
    case 7: return Formula::release(sub(), sub());
    default: return sub();
    }
}

Formula random_fragment_sentence(Rng& rng, std::size_t max_depth, std::span<const std::string> agents,
                                 std::span<const std::string> atoms)
{
    return gen_random_formula(rng(), uniform(rng, 1, max_depth), agents, atoms);
}

Formula random_nested_sentence(Rng& rng, std::size_t max_depth, std::span<const std::string> agents,
                               std::span<const std::string> atoms)
{
    return gen_random_sentence(rng(), uniform(rng, 1, max_depth), agents, atoms);
}

} // namespace tristrat::test
