#include "generators.hpp"

#include "tristrat/errors.hpp"
#include "tristrat/formula.hpp"
#include "tristrat/random_formula.hpp"

#include <gtest/gtest.h>

namespace tristrat {
namespace {

using test::Rng;

const std::vector<std::string> kVars = {"x", "y", "z"};
const std::vector<std::string> kAgents = {"a", "b"};
const std::vector<std::string> kAtoms = {"p", "q", "r"};

TEST(Parse, EventuallyExpandsToUntilTrue)
{
    Formula expected = Formula::exists("x", Formula::bind("a", "x", Formula::until(Formula::atom("true"),
                                                                                   Formula::atom("p"))));
    EXPECT_EQ(parse("E x (a,x) F p"), expected);
}

TEST(Parse, GloballyExpandsToFalseRelease)
{
    EXPECT_EQ(parse("G p"), Formula::release(Formula::atom("false"), Formula::atom("p")));
}

TEST(Parse, LiteralConjunction)
{
    EXPECT_EQ(parse("p & !p"), Formula::conj(Formula::atom("p"), Formula::neg_atom("p")));
}

TEST(Parse, SchedulerPropertyForTwoProcesses)
{
    Formula phi = parse("A x A y1 A y2 (Arb,x)(P1,y1)(P2,y2) G !(rs1 & rs2)");
    Formula body = Formula::globally(Formula::disj(Formula::neg_atom("rs1"), Formula::neg_atom("rs2")));
    Formula expected = Formula::forall(
        "x", Formula::forall("y1", Formula::forall("y2", Formula::bind("Arb", "x", Formula::bind("P1", "y1",
                                                                   Formula::bind("P2", "y2", body))))));
    EXPECT_EQ(phi, expected);
    EXPECT_TRUE(is_sentence(phi, {"Arb", "P1", "P2"}));
}

TEST(Parse, NegatedGroupIsDualized)
{
    EXPECT_EQ(parse("!(p U q)"), Formula::release(Formula::neg_atom("p"), Formula::neg_atom("q")));
    EXPECT_EQ(parse("!X p"), Formula::next(Formula::neg_atom("p")));
    EXPECT_EQ(parse("!!p"), Formula::atom("p"));
}

TEST(Parse, Precedence)
{
    // ! > X/F/G > U/R (right-assoc) > & > |
    EXPECT_EQ(parse("p | q & r"), parse("p | (q & r)"));
    EXPECT_EQ(parse("p & q U r"), parse("p & (q U r)"));
    EXPECT_EQ(parse("p U q U r"), parse("p U (q U r)"));
    EXPECT_EQ(parse("p R q U r"), parse("p R (q U r)"));
    EXPECT_EQ(parse("X p U q"), parse("(X p) U q"));
    EXPECT_EQ(parse("F p & G q"), parse("(F p) & (G q)"));
    EXPECT_EQ(parse("!p & q"), parse("(!p) & q"));
}

TEST(Parse, QuantifierScopesOverTheRest)
{
    EXPECT_EQ(parse("E x (a,x) p & q"), parse("E x ((a,x) (p & q))"));
}

TEST(Parse, SyntaxErrorCarriesPosition)
{
    try {
        parse("p &\n  & q");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
    EXPECT_THROW(parse(""), SyntaxError);
    EXPECT_THROW(parse("(p"), SyntaxError);
    EXPECT_THROW(parse("p q"), SyntaxError);
    EXPECT_THROW(parse("E (a,x) p"), SyntaxError);
}

TEST(Parse, IdentifierUsedAsAgentAndVariable)
{
    EXPECT_THROW(parse("E x (x,x) p"), NamespaceError);
    EXPECT_THROW(parse("E a E x (a,x) (b,a) p"), NamespaceError);
}

TEST(Free, TemporalWithoutBindingNeedsAllAgents)
{
    FreeSet fs = free(parse("p U q"), {"a", "b"});
    EXPECT_EQ(fs.agents, (std::set<std::string>{"a", "b"}));
    EXPECT_TRUE(fs.vars.empty());
}

TEST(Free, BindingWithoutQuantifier)
{
    FreeSet fs = free(parse("(a,x) X p"), {"a", "b", "c"});
    EXPECT_EQ(fs.agents, (std::set<std::string>{"b", "c"}));
    EXPECT_EQ(fs.vars, (std::set<std::string>{"x"}));
}

TEST(Free, ClosedFormula)
{
    EXPECT_TRUE(free(parse("E x (a,x) p"), {"a"}).empty());
}

TEST(IsSentence, Examples)
{
    EXPECT_FALSE(is_sentence(parse("p"), {"a"}));
    EXPECT_FALSE(is_sentence(parse("A x p"), {"a"}));
    EXPECT_TRUE(is_sentence(parse("A x (a,x) G p"), {"a"}));
}

TEST(Dualize, Examples)
{
    EXPECT_EQ(dualize(Formula::atom("p")), Formula::neg_atom("p"));
    EXPECT_EQ(dualize(parse("E x (p U q)")), parse("A x (!p R !q)"));
    EXPECT_EQ(dualize(parse("(a,x) X (p & q)")), parse("(a,x) X (!p | !q)"));
}

TEST(Dualize, InvolutionOnRandomTrees)
{
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Formula f = test::random_ast(rng, test::uniform(rng, 1, 6), kVars, kAgents, kAtoms);
        ASSERT_EQ(dualize(dualize(f)), f) << print(f);
        ASSERT_EQ(dualize(f).size(), f.size());
    }
}

TEST(Dualize, PreservesFreeSet)
{
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        Formula f = test::random_ast(rng, test::uniform(rng, 1, 6), kVars, kAgents, kAtoms);
        ASSERT_EQ(free(dualize(f), {"a", "b"}), free(f, {"a", "b"})) << print(f);
    }
}

TEST(Print, RoundTripsThroughParse)
{
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        Formula f = test::random_ast(rng, test::uniform(rng, 1, 7), kVars, kAgents, kAtoms);
        ASSERT_EQ(parse(print(f)), f) << print(f);
    }
}

TEST(Negate, StandardModeEqualsDualize)
{
    Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        Formula f = test::random_ast(rng, test::uniform(rng, 1, 6), kVars, kAgents, kAtoms);
        ASSERT_EQ(negate(f, ReleaseMode::Standard), dualize(f)) << print(f);
    }
}

TEST(RandomFormula, DeterministicInSeed)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EXPECT_EQ(gen_random_formula(seed, 4, kAgents, kAtoms), gen_random_formula(seed, 4, kAgents, kAtoms));
        EXPECT_EQ(gen_random_sentence(seed, 4, kAgents, kAtoms), gen_random_sentence(seed, 4, kAgents, kAtoms));
    }
}

TEST(RandomFormula, NestedGeneratorYieldsSentences)
{
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Formula f = gen_random_sentence(seed, 1 + seed % 5, kAgents, kAtoms);
        ASSERT_TRUE(is_sentence(f, {"a", "b"})) << print(f);
        ASSERT_EQ(parse(print(f)), f);
    }
}

} // namespace
} // namespace tristrat
