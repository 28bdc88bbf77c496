#include "tristrat/oracle.hpp"

#include "tristrat/errors.hpp"
#include "tristrat/semantics.hpp"

#include <functional>
#include <map>

namespace tristrat {
namespace {

constexpr std::size_t kMaxLassos = 2'000'000;

class Oracle {
public:
    Oracle(const ThreeCgs& g, const InducedGraphs& ig, ReleaseMode mode) : g_(g), ig_(ig), mode_(mode) {}

    Truth value(const Formula& f, StateId s)
    {
        auto key = std::make_pair(f.id(), s);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        Truth v = compute(f, s);
        memo_.emplace(key, v);
        return v;
    }

private:
    Truth compute(const Formula& f, StateId s)
    {
        switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom: {
            bool neg = f.op() == Op::NegAtom;
            if (f.name() == kTrueAtom || f.name() == kFalseAtom)
                return from_bool((f.name() == kTrueAtom) != neg);
            auto a = g_.find_atom(f.name());
            if (!a)
                throw UnknownAtom("atom '" + f.name() + "' is not in the model");
            return neg ? tv_not(g_.label(s, *a)) : g_.label(s, *a);
        }
        case Op::And:
            return tv_and(value(f.lhs(), s), value(f.rhs(), s));
        case Op::Or:
            return tv_or(value(f.lhs(), s), value(f.rhs(), s));
        case Op::Next:
        case Op::Until:
        case Op::Release: {
            bool top = true;
            for_each_lasso(ig_.may_succ, s, [&](const std::vector<StateId>& path, std::size_t loop) {
                if (!holds(f, path, loop, Truth::True))
                    top = false;
                return top;
            });
            if (top)
                return Truth::True;
            bool bot = false;
            for_each_lasso(ig_.must_succ, s, [&](const std::vector<StateId>& path, std::size_t loop) {
                if (holds(f, path, loop, Truth::False))
                    bot = true;
                return !bot;
            });
            return bot ? Truth::False : Truth::Undef;
        }
        default:
            throw UnsupportedFragment("oracle bodies must be quantifier- and binding-free");
        }
    }

    /// Positive clause (want == True) or refutation clause (want == False)
    /// of f on the lasso path[0..loop) path[loop..]^omega.
    bool holds(const Formula& f, const std::vector<StateId>& path, std::size_t loop, Truth want)
    {
        // One unrolling covers every distinct (position, state) pattern.
        std::vector<StateId> seq = path;
        for (std::size_t i = loop; i < path.size(); ++i)
            seq.push_back(path[i]);
        auto at = [&](const Formula& g, std::size_t i) { return value(g, seq[i]) == want; };
        const std::size_t len = seq.size();
        bool positive = want == Truth::True;

        if (f.op() == Op::Next)
            return at(f.lhs(), 1);

        const Formula& a = f.lhs();
        const Formula& b = f.rhs();
        if (f.op() == Op::Until) {
            if (positive) {
                // some i: b at i, a before i
                for (std::size_t i = 0; i < len; ++i) {
                    if (at(b, i))
                        return true;
                    if (!at(a, i))
                        return false;
                }
                return false;
            }
            // every i: b at i, or a at some j < i
            for (std::size_t i = 0; i < len; ++i) {
                if (!at(b, i))
                    return false;
                if (at(a, i))
                    return true;
            }
            return true;
        }
        bool literal = mode_ == ReleaseMode::Inclusive;
        if (positive) {
            // every i: b at i, or a at some j <= i (j < i in standard mode)
            for (std::size_t i = 0; i < len; ++i) {
                if (literal && at(a, i))
                    return true;
                if (!at(b, i))
                    return false;
                if (!literal && at(a, i))
                    return true;
            }
            return true;
        }
        // some i: b at i and a at every j <= i (j < i in standard mode)
        for (std::size_t i = 0; i < len; ++i) {
            if (literal) {
                if (!at(a, i))
                    return false;
                if (at(b, i))
                    return true;
            } else {
                if (at(b, i))
                    return true;
                if (!at(a, i))
                    return false;
            }
        }
        return false;
    }

    /// Visits lassos whose prefix and cycle are each free of repetitions;
    /// stops when the visitor returns false.
    template <typename Visit>
    void for_each_lasso(const std::vector<std::vector<StateId>>& succ, StateId s, Visit&& visit)
    {
        std::size_t count = 0;
        std::vector<StateId> path;
        std::vector<char> in_prefix(g_.num_states(), 0), in_cycle(g_.num_states(), 0);
        bool go = true;
        // Phase 1 extends the prefix; at any point the cycle may start.
        std::function<void(StateId, std::size_t)> cycle = [&](StateId cur, std::size_t loop) {
            for (StateId t : succ[cur]) {
                if (!go)
                    return;
                if (t == path[loop]) {
                    if (++count > kMaxLassos)
                        throw TooLarge("too many lassos for the oracle");
                    go = visit(path, loop);
                    continue;
                }
                if (in_cycle[t])
                    continue;
                in_cycle[t] = 1;
                path.push_back(t);
                cycle(t, loop);
                path.pop_back();
                in_cycle[t] = 0;
            }
        };
        std::function<void(StateId)> prefix = [&](StateId cur) {
            if (!go)
                return;
            // cur opens the cycle
            in_cycle[cur] = 1;
            cycle(cur, path.size() - 1);
            in_cycle[cur] = 0;
            for (StateId t : succ[cur]) {
                if (!go)
                    return;
                if (in_prefix[t])
                    continue;
                in_prefix[t] = 1;
                path.push_back(t);
                prefix(t);
                path.pop_back();
                in_prefix[t] = 0;
            }
        };
        in_prefix[s] = 1;
        path.push_back(s);
        prefix(s);
    }

    const ThreeCgs& g_;
    const InducedGraphs& ig_;
    ReleaseMode mode_;
    std::map<std::pair<const void*, StateId>, Truth> memo_;
};

} // namespace

Truth oracle_paths(const ThreeCgs& g, const Assignment& chi, StateId s, const Formula& body, ReleaseMode mode)
{
    if (g.num_states() > kOracleMaxStates)
        throw TooLarge("oracle is limited to " + std::to_string(kOracleMaxStates) + " states");
    if (s >= g.num_states())
        throw UnknownState("state index " + std::to_string(s) + " is out of range");
    InducedGraphs ig = InducedGraphs::of(g, chi);
    Oracle o(g, ig, mode);
    return o.value(body, s);
}

} // namespace tristrat
