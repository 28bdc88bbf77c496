#include "tristrat/random_formula.hpp"

#include <random>
#include <vector>

namespace tristrat {
namespace {

enum class Ctor { Literal, And, Or, Next, Until, Release, Eventually, Globally, Strategic };

class Generator {
public:
    Generator(std::uint64_t seed, std::span<const std::string> agents, std::span<const std::string> atoms,
              bool nested)
        : rng_(seed), agents_(agents.begin(), agents.end()), atoms_(atoms.begin(), atoms.end()), nested_(nested)
    {
    }

    Formula sentence(std::size_t depth)
    {
        std::vector<std::size_t> all(agents_.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = i;
        return prefix(body(depth, true), all);
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    Formula literal()
    {
        bool neg = pick(2) == 1;
        std::string name = atoms_.empty() ? (pick(2) ? "true" : "false") : atoms_[pick(atoms_.size())];
        return neg ? Formula::neg_atom(name) : Formula::atom(name);
    }

    Formula body(std::size_t depth, bool top)
    {
        if (depth <= 1)
            return literal();
        std::vector<Ctor> ctors = {Ctor::And,     Ctor::Or,      Ctor::Next,       Ctor::Until,
                                   Ctor::Release, Ctor::Eventually, Ctor::Globally};
        if (!top)
            ctors.push_back(Ctor::Literal);
        if (nested_ && !top && !agents_.empty())
            ctors.push_back(Ctor::Strategic);
        std::size_t d = depth - 1;
        switch (ctors[pick(ctors.size())]) {
        case Ctor::Literal:
            return literal();
        case Ctor::And:
            return Formula::conj(body(d, false), body(d, false));
        case Ctor::Or:
            return Formula::disj(body(d, false), body(d, false));
        case Ctor::Next:
            return Formula::next(body(d, false));
        case Ctor::Until:
            return Formula::until(body(d, false), body(d, false));
        case Ctor::Release:
            return Formula::release(body(d, false), body(d, false));
        case Ctor::Eventually:
            return Formula::eventually(body(d, false));
        case Ctor::Globally:
            return Formula::globally(body(d, false));
        case Ctor::Strategic: {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < agents_.size(); ++i)
                if (pick(2))
                    subset.push_back(i);
            if (subset.empty())
                subset.push_back(pick(agents_.size()));
            return prefix(body(d, true), subset);
        }
        }
        return literal();
    }

    /// Quantifies fresh variables and binds the given agents to them.
    Formula prefix(Formula f, const std::vector<std::size_t>& bound)
    {
        if (agents_.empty())
            return f;
        std::size_t k = 1 + pick(bound.size());
        std::vector<std::string> vars;
        std::vector<bool> universal;
        for (std::size_t i = 0; i < k; ++i) {
            vars.push_back("x" + std::to_string(++counter_));
            universal.push_back(pick(2) == 1);
        }
        std::vector<std::size_t> target;
        for (std::size_t i = 0; i < bound.size(); ++i)
            target.push_back(pick(k));
        for (std::size_t i = bound.size(); i-- > 0;)
            f = Formula::bind(agents_[bound[i]], vars[target[i]], f);
        for (std::size_t i = k; i-- > 0;)
            f = universal[i] ? Formula::forall(vars[i], f) : Formula::exists(vars[i], f);
        return f;
    }

    std::mt19937_64 rng_;
    std::vector<std::string> agents_, atoms_;
    bool nested_;
    int counter_ = 0;
};

} // namespace

Formula gen_random_formula(std::uint64_t seed, std::size_t depth, std::span<const std::string> agents,
                           std::span<const std::string> atoms)
{
    return Generator(seed, agents, atoms, false).sentence(depth);
}

Formula gen_random_sentence(std::uint64_t seed, std::size_t depth, std::span<const std::string> agents,
                            std::span<const std::string> atoms)
{
    return Generator(seed, agents, atoms, true).sentence(depth);
}

} // namespace tristrat
