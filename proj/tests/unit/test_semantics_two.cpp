#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"

#include "tristrat/errors.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <gtest/gtest.h>

namespace tristrat {
namespace {

using test::Rng;

constexpr ActionId kAlpha = 0;
constexpr ActionId kBeta = 1;

Assignment fixed(const std::string& agent, std::vector<ActionId> table)
{
    Assignment chi;
    chi.agents[agent] = Strategy{std::move(table)};
    return chi;
}

EvalOptions mode(ReleaseMode m)
{
    EvalOptions o;
    o.release = m;
    return o;
}

TEST(Play, M1BetaThenAlpha)
{
    Lasso l = play(test::m1(), fixed("a", {kBeta, kAlpha}), 0);
    EXPECT_EQ(l.prefix, std::vector<StateId>{0});
    EXPECT_EQ(l.cycle, std::vector<StateId>{1});
}

TEST(Play, M1AlwaysAlpha)
{
    Lasso l = play(test::m1(), fixed("a", {kAlpha, kAlpha}), 0);
    EXPECT_TRUE(l.prefix.empty());
    EXPECT_EQ(l.cycle, std::vector<StateId>{0});
}

TEST(Play, IncompleteAssignment)
{
    EXPECT_THROW(play(test::m1(), {}, 0), IncompleteAssignment);
}

TEST(Play, StartsAtSourceAndFitsStates)
{
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {6, 3, 2, {"p"}});
        Assignment chi = test::random_complete(rng, g.num_states(), g.num_actions(), g.agents());
        StateId s = static_cast<StateId>(test::uniform(rng, 0, g.num_states() - 1));
        Lasso l = play(g, chi, s);
        ASSERT_EQ(l.at(0), s);
        ASSERT_FALSE(l.cycle.empty());
        ASSERT_LE(l.prefix.size() + l.cycle.size(), g.num_states());
        // Consecutive positions follow the induced transition.
        for (std::size_t k = 0; k + 1 < l.prefix.size() + 2 * l.cycle.size(); ++k) {
            std::vector<ActionId> digits;
            for (const auto& a : g.agents())
                digits.push_back(chi.agents.at(a)(l.at(k)));
            ASSERT_EQ(g.successor(l.at(k), g.profiles().encode(digits)), l.at(k + 1));
        }
    }
}

TEST(Eval2, M1ExistsEventually)
{
    EXPECT_TRUE(eval2(test::m1(), parse("E x (a,x) F p"), {}, 0));
}

TEST(Eval2, M1ForallEventually)
{
    EXPECT_FALSE(eval2(test::m1(), parse("A x (a,x) F p"), {}, 0));
}

TEST(Eval2, TrueAtomEverywhere)
{
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {4, 2, 2, {"p"}});
        for (StateId s = 0; s < g.num_states(); ++s)
            EXPECT_TRUE(eval2(g, parse("true"), {}, s));
    }
}

TEST(Eval2, TemporalNeedsCompleteAssignment)
{
    EXPECT_THROW(eval2(test::m1(), parse("X p"), {}, 0), FreeUnderTemporal);
}

TEST(Eval2, UnknownAtom)
{
    EXPECT_THROW(eval2(test::m1(), parse("zz"), {}, 0), UnknownAtom);
}

TEST(Check2, M1Examples)
{
    EXPECT_TRUE(check2(test::m1(), parse("E x (a,x) F p")));
    EXPECT_FALSE(check2(test::m1(), parse("A x (a,x) G !p")));
}

TEST(Check2, SchedulerTwoProcesses)
{
    Scheduler s = gen_scheduler(2);
    EXPECT_TRUE(check2(s.model, s.property));
}

TEST(Check2, RejectsNonSentences)
{
    EXPECT_THROW(check2(test::m1(), parse("p")), NotASentence);
    EXPECT_THROW(check2(test::m1(), parse("(a,x) p")), NotASentence);
}

TEST(Check2, BudgetExceeded)
{
    EvalOptions o;
    o.budget = 1;
    o.collapse = false;
    EXPECT_THROW(check2(test::m1(), parse("A x (a,x) G !p"), o), BudgetExceeded);
}

TEST(Check2, AgreesWithNaiveEvaluator)
{
    Rng rng(33);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = i % 2 ? test::random_nested_sentence(rng, 4, g.agents(), g.atoms())
                            : test::random_fragment_sentence(rng, 4, g.agents(), g.atoms());
        for (auto m : {ReleaseMode::Inclusive, ReleaseMode::Standard})
            ASSERT_EQ(check2(g, phi, mode(m)), test::naive_check2(g, phi, m)) << print(phi) << "\n" << save(g);
    }
}

TEST(Check2, CollapseDoesNotChangeVerdicts)
{
    Rng rng(34);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 3, 2, {"p", "q"}});
        Formula phi = test::random_nested_sentence(rng, 4, g.agents(), g.atoms());
        EvalOptions plain;
        plain.collapse = false;
        ASSERT_EQ(check2(g, phi), check2(g, phi, plain)) << print(phi) << "\n" << save(g);
    }
}

TEST(Check2, QuantifiersBelowBindingsAndShadowing)
{
    const char* texts[] = {
        "A x (a,x) A y (b,y) G p",
        "E x (a,x) E x (b,x) F p",
        "E x (a,x) (b,x) E y (a,y) X p",
        "A x (a,x) (b,x) A x (b,x) p U q",
        "E x (a,x) (b,x) E y (b,y) E x (a,x) p R q",
    };
    Rng rng(40);
    for (int i = 0; i < 100; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {4, 2, 2, {"p", "q"}});
        if (g.agents().size() < 2)
            continue;
        for (const char* text : texts)
            ASSERT_EQ(check2(g, parse(text)), test::naive_check2(g, parse(text))) << text;
    }
}

// eval2(phi) = not eval2(dualize(phi)) holds for standard release only; in
// the literal reading dualize(p R q) = !p U !q is not the negation.
TEST(Duality, StandardModeOnRandomSentences)
{
    Rng rng(35);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 3, 2, {"p", "q"}});
        Formula phi = test::random_nested_sentence(rng, 4, g.agents(), g.atoms());
        auto o = mode(ReleaseMode::Standard);
        ASSERT_NE(check2(g, phi, o), check2(g, dualize(phi), o)) << print(phi);
    }
}

TEST(Duality, LiteralModeCounterexample)
{
    // p holds at s0 and q fails there: p R q is true by the j <= i clause,
    // and its dual !p U !q is true as well.
    ConcreteCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"s0"};
    d.actions = {"act"};
    d.atoms = {"p", "q"};
    d.transition = {0};
    d.label = {true, false};
    ConcreteCgs g = ConcreteCgs::from_indexed(d);
    Formula phi = parse("E x (a,x) p R q");
    EXPECT_TRUE(check2(g, phi));
    EXPECT_TRUE(check2(g, dualize(phi)));
    EXPECT_FALSE(check2(g, negate(phi, ReleaseMode::Inclusive)));
}

TEST(Duality, NegateIsExactInBothModes)
{
    Rng rng(36);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 3, 2, {"p", "q"}});
        Formula phi = test::random_nested_sentence(rng, 4, g.agents(), g.atoms());
        for (auto m : {ReleaseMode::Inclusive, ReleaseMode::Standard})
            ASSERT_NE(check2(g, phi, mode(m)), check2(g, negate(phi, m), mode(m))) << print(phi);
    }
}

TEST(Temporal, UntilUnfolding)
{
    Rng rng(37);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 3, 2, {"p", "q"}});
        Assignment chi = test::random_complete(rng, g.num_states(), g.num_actions(), g.agents());
        Formula until = parse("p U q");
        Formula unfolded = parse("q | (p & X (p U q))");
        for (StateId s = 0; s < g.num_states(); ++s)
            ASSERT_EQ(eval2(g, until, chi, s), eval2(g, unfolded, chi, s));
    }
}

TEST(Temporal, ReleaseMatchesLassoScan)
{
    Rng rng(38);
    for (int i = 0; i < 300; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 3, 2, {"p", "q"}});
        Assignment chi = test::random_complete(rng, g.num_states(), g.num_actions(), g.agents());
        auto p = *g.find_atom("p");
        auto q = *g.find_atom("q");
        for (auto m : {ReleaseMode::Inclusive, ReleaseMode::Standard}) {
            for (StateId s = 0; s < g.num_states(); ++s) {
                Lasso l = play(g, chi, s);
                std::size_t len = l.prefix.size() + l.cycle.size();
                bool expect = true;
                for (std::size_t k = 0; k < len; ++k) {
                    bool released = false;
                    for (std::size_t j = 0; j < k || (m == ReleaseMode::Inclusive && j == k); ++j)
                        released = released || g.label(l.at(j), p);
                    expect = expect && (g.label(l.at(k), q) || released);
                }
                ASSERT_EQ(eval2(g, parse("p R q"), chi, s, mode(m)), expect);
            }
        }
    }
}

TEST(Temporal, PositionalScanOfNestedOperators)
{
    Rng rng(39);
    for (int i = 0; i < 200; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {5, 2, 2, {"p", "q"}});
        Assignment chi = test::random_complete(rng, g.num_states(), g.num_actions(), g.agents());
        Formula phi = parse("(X p U G q) | (p R F !q)");
        for (StateId s = 0; s < g.num_states(); ++s)
            ASSERT_EQ(eval2(g, phi, chi, s), test::naive_eval2(g, phi, chi, s));
    }
}

} // namespace
} // namespace tristrat
