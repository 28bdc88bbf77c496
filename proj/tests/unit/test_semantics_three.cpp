#include "fixtures.hpp"
#include "generators.hpp"
#include "naive.hpp"

#include "tristrat/abstraction.hpp"
#include "tristrat/errors.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <gtest/gtest.h>

namespace tristrat {
namespace {

using test::Rng;
constexpr Truth T = Truth::True, F = Truth::False, U = Truth::Undef;

InducedGraphs graphs(std::vector<std::vector<StateId>> may, std::vector<std::vector<StateId>> must)
{
    InducedGraphs ig;
    ig.may_succ = std::move(may);
    ig.must_succ = std::move(must);
    ig.joint.assign(ig.may_succ.size(), 0);
    return ig;
}

Assignment fixed(const std::string& agent, std::vector<ActionId> table)
{
    Assignment chi;
    chi.agents[agent] = Strategy{std::move(table)};
    return chi;
}

TEST(Truth, LukasiewiczConnectives)
{
    EXPECT_EQ(tv_and(T, U), U);
    EXPECT_EQ(tv_and(U, F), F);
    EXPECT_EQ(tv_or(U, F), U);
    EXPECT_EQ(tv_or(T, U), T);
    EXPECT_EQ(tv_not(U), U);
    EXPECT_EQ(tv_not(T), F);
}

TEST(NextValue, AllMaySuccessorsTrue)
{
    auto ig = graphs({{1, 2}, {1}, {2}}, {{}, {}, {}});
    EXPECT_EQ(next_value(ig, {F, T, T}, 0), T);
}

TEST(NextValue, SomeMustSuccessorFalse)
{
    auto ig = graphs({{1}, {1}}, {{1}, {1}});
    EXPECT_EQ(next_value(ig, {T, F}, 0), F);
}

TEST(NextValue, RefutingSuccessorWithoutMustContinuation)
{
    // 1 has no must successor, so no must play passes through it.
    auto ig = graphs({{1}, {0}}, {{1}, {}});
    EXPECT_EQ(next_value(ig, {F, F}, 0), U);
}

TEST(NextValue, NeitherClauseFires)
{
    auto ig = graphs({{1, 2}, {1}, {2}}, {{}, {}, {}});
    EXPECT_EQ(next_value(ig, {F, T, U}, 0), U);
}

TEST(UntilValue, EmbeddedM1)
{
    ThreeCgs e = embed(test::m1());
    Formula phi = parse("true U p");
    EXPECT_EQ(eval3(e, phi, fixed("a", {1, 1}), 0), T);
    EXPECT_EQ(eval3(e, phi, fixed("a", {0, 0}), 0), F);
}

TEST(UntilValue, UndefAtomOnTheOnlyPath)
{
    ThreeCgs g = test::undef_path();
    auto ig = InducedGraphs::of(g, fixed("a", {0, 0}));
    EXPECT_TRUE(ig.must_succ[0].empty());
    EXPECT_EQ(until_value(ig, {T, T}, {F, U})[0], U);
    EXPECT_EQ(eval3(g, parse("true U p"), fixed("a", {0, 0}), 0), U);
}

TEST(UntilValue, UndefOnA1)
{
    // Block W mixes p and !p; the play I W W ... never settles p.
    ThreeCgs a = test::a1();
    Assignment chi = fixed("a", {0, 0, 0});
    EXPECT_EQ(eval3(a, parse("true U p"), chi, 0), U);
    EXPECT_EQ(eval3(a, parse("true U d"), fixed("a", {0, 1, 0}), 0), T);
    EXPECT_EQ(eval3(a, parse("true U d"), chi, 0), F);
}

TEST(ReleaseValue, SchedulerAbstraction)
{
    Scheduler s = gen_scheduler(2);
    ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
    Rng rng(41);
    Formula phi = parse("false R (!rs1 | !rs2)");
    for (int i = 0; i < 50; ++i) {
        Assignment chi = test::random_complete(rng, a.num_states(), a.num_actions(), a.agents());
        EXPECT_EQ(eval3(a, phi, chi, a.initial()), T);
    }
}

TEST(ReleaseValue, FirstOperandTrueEverywhere)
{
    auto ig = graphs({{1}, {0}}, {{}, {}});
    EXPECT_EQ(release_value(ig, {T, T}, {F, U}), (Valuation{T, T}));
}

TEST(ReleaseValue, BothOperandsFalseOnTotalMustGraph)
{
    auto ig = graphs({{1}, {0}}, {{1}, {0}});
    EXPECT_EQ(release_value(ig, {F, F}, {F, F}), (Valuation{F, F}));
    EXPECT_EQ(release_value(ig, {F, F}, {F, F}, ReleaseMode::Standard), (Valuation{F, F}));
}

TEST(ReleaseValue, RefutationNeedsInfiniteMustPath)
{
    // Must graph stops at 1: no must play exists, so nothing is refuted.
    auto ig = graphs({{1}, {1}}, {{1}, {}});
    EXPECT_EQ(release_value(ig, {F, F}, {F, F}), (Valuation{U, U}));
}

TEST(Eval3, EmbeddingMatchesEval2)
{
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = test::random_nested_sentence(rng, 4, g.agents(), g.atoms());
        ASSERT_EQ(check3(embed(g), phi), from_bool(check2(g, phi))) << print(phi);
    }
}

TEST(Eval3, InsufficientMustActions)
{
    ThreeCgs g = test::may_only_witness();
    EXPECT_EQ(check3(g, parse("E x (a,x) F p")), U);
    EXPECT_EQ(test::naive_check3(g, parse("E x (a,x) F p")), U);
}

TEST(Eval3, TrueAtomEverywhere)
{
    ThreeCgs a = test::a1();
    for (StateId s = 0; s < a.num_states(); ++s)
        EXPECT_EQ(eval3(a, parse("true"), {}, s), T);
}

TEST(Check3, AbstractSchedulerThreeProcesses)
{
    Scheduler s = gen_scheduler(3);
    EXPECT_EQ(check3(abstract(s.model, s.waiting_cluster).model, s.property), T);
}

TEST(Check3, EmbeddedM1)
{
    EXPECT_EQ(check3(embed(test::m1()), parse("E x (a,x) F p")), T);
}

TEST(Check3, UndefinedInitialAtomUnderGlobally)
{
    ThreeCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"v"};
    d.actions_may = {"a"};
    d.actions_must = {"a"};
    d.atoms = {"p"};
    d.tau_may = {{0}};
    d.tau_must = {{0}};
    d.label = {U};
    EXPECT_EQ(check3(ThreeCgs::from_indexed(d), parse("A x (a,x) G p")), U);
}

TEST(Check3, AgreesWithNaiveEvaluator)
{
    Rng rng(43);
    for (int i = 0; i < 300; ++i) {
        ThreeCgs g = test::random_three(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = i % 2 ? test::random_nested_sentence(rng, 3, g.agents(), g.atoms())
                            : test::random_fragment_sentence(rng, 4, g.agents(), g.atoms());
        if (test::strategy_count(g.num_states(), g.num_actions()) > 16 && phi.depth() > 6)
            continue;
        for (auto m : {ReleaseMode::Inclusive, ReleaseMode::Standard}) {
            EvalOptions o;
            o.release = m;
            ASSERT_EQ(check3(g, phi, o), test::naive_check3(g, phi, m)) << print(phi) << "\n" << save(g);
        }
    }
}

TEST(Check3, CollapseAndShortcutsDoNotChangeVerdicts)
{
    Rng rng(44);
    for (int i = 0; i < 400; ++i) {
        ThreeCgs g = test::random_three(rng, {5, 3, 2, {"p", "q"}});
        Formula phi = i % 2 ? test::random_nested_sentence(rng, 4, g.agents(), g.atoms())
                            : test::random_fragment_sentence(rng, 4, g.agents(), g.atoms());
        EvalOptions plain;
        plain.collapse = false;
        plain.shortcuts = false;
        Truth reference = check3(g, phi, plain);
        for (bool c : {false, true})
            for (bool s : {false, true}) {
                EvalOptions o;
                o.collapse = c;
                o.shortcuts = s;
                ASSERT_EQ(check3(g, phi, o), reference) << print(phi) << "\n" << save(g);
            }
    }
}

TEST(Check3, ResolvingUndefLabelsNeverFlipsDefinedVerdicts)
{
    Rng rng(45);
    for (int i = 0; i < 300; ++i) {
        ThreeCgs g = test::random_three(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = test::random_nested_sentence(rng, 4, g.agents(), g.atoms());
        Truth before = check3(g, phi);
        ThreeCgs::Indexed d;
        d.agents = g.agents();
        d.states = g.states();
        d.initial = g.initial();
        d.actions_may = g.actions_may();
        d.actions_must = g.actions_must();
        d.atoms = g.atoms();
        for (StateId s = 0; s < g.num_states(); ++s)
            for (ProfileId p = 0; p < g.profiles().count(); ++p) {
                d.tau_may.push_back(g.successors(s, p, Mode::May));
                d.tau_must.push_back(g.successors(s, p, Mode::Must));
            }
        for (StateId s = 0; s < g.num_states(); ++s)
            for (std::size_t a = 0; a < g.atoms().size(); ++a) {
                Truth t = g.label(s, a);
                d.label.push_back(t == U ? (test::coin(rng) ? T : F) : t);
            }
        Truth after = check3(ThreeCgs::from_indexed(d), phi);
        if (before != U)
            ASSERT_EQ(after, before) << print(phi);
    }
}

TEST(Check3, RejectsNonSentences)
{
    EXPECT_THROW(check3(test::a1(), parse("G p")), NotASentence);
}

} // namespace
} // namespace tristrat
