#include "fixtures.hpp"
#include "generators.hpp"

#include "tristrat/abstraction.hpp"
#include "tristrat/errors.hpp"
#include "tristrat/reduction.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

namespace tristrat {
namespace {

using test::Rng;
using Set = std::set<std::string>;

TEST(Classify, SchedulerPropertyIsUniversal)
{
    Classification c = classify(scheduler_property(3));
    EXPECT_TRUE(c.e_agents.empty());
    EXPECT_EQ(c.u_agents, (Set{"Arbiter", "P1", "P2", "P3"}));
}

TEST(Classify, MixedPrefix)
{
    Classification c = classify(parse("E x A y (a,x)(b,y) X p"));
    EXPECT_EQ(c.e_agents, Set{"a"});
    EXPECT_EQ(c.u_agents, Set{"b"});
}

TEST(Classify, SharedVariable)
{
    Classification c = classify(parse("E x (a,x)(b,x) X p"));
    EXPECT_EQ(c.e_agents, (Set{"a", "b"}));
    EXPECT_TRUE(c.u_agents.empty());
}

TEST(Classify, Violations)
{
    EXPECT_THROW(classify(parse("E x E y (a,x)(a,y) p")), UnsupportedFragment);
    EXPECT_THROW(classify(parse("E x (a,x) E x (b,x) p")), UnsupportedFragment);
    EXPECT_THROW(classify(parse("E x (a,x) X E y (b,y) p")), UnsupportedFragment);
    EXPECT_THROW(classify(parse("E x (a,x) (p & E y (b,y) q)")), UnsupportedFragment);
    EXPECT_THROW(classify(parse("(a,x) p")), UnsupportedFragment);
}

TEST(Combine, Table)
{
    EXPECT_EQ(combine(true, false), Truth::True);
    EXPECT_EQ(combine(false, true), Truth::False);
    EXPECT_EQ(combine(false, false), Truth::Undef);
    EXPECT_THROW(combine(true, true), InconsistentSplit);
}

TEST(Split, DuplicatesAtomsAndAddsNature)
{
    SplitInstance inst = split(test::a1(), parse("E x (a,x) F d"));
    for (const auto* m : {&inst.sat_model, &inst.viol_model}) {
        EXPECT_TRUE(m->find_atom("d_true"));
        EXPECT_TRUE(m->find_atom("d_false"));
        EXPECT_TRUE(m->find_atom("p_true"));
        EXPECT_TRUE(m->find_atom("p_false"));
        EXPECT_TRUE(m->find_agent(inst.nature));
    }
    EXPECT_EQ(inst.e_agents, Set{"a"});
    EXPECT_TRUE(is_sentence(inst.sat_formula, {inst.sat_model.agents().begin(), inst.sat_model.agents().end()}));
    EXPECT_TRUE(
        is_sentence(inst.viol_formula, {inst.viol_model.agents().begin(), inst.viol_model.agents().end()}));
}

TEST(Split, EmbeddedModelsAreNeverUndef)
{
    Rng rng(61);
    for (int i = 0; i < 150; ++i) {
        ConcreteCgs g = test::random_concrete(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = test::random_fragment_sentence(rng, 4, g.agents(), g.atoms());
        ASSERT_EQ(check_split(embed(g), phi), from_bool(check2(g, phi))) << print(phi);
    }
}

// The violation side of this instance nests an eventuality over a formula
// that reads every strategy variable; only the satisfaction side is cheap.
TEST(Split, AbstractSchedulerSatisfactionSide)
{
    for (std::size_t n = 2; n <= 3; ++n) {
        Scheduler s = gen_scheduler(n);
        ThreeCgs a = abstract(s.model, s.waiting_cluster).model;
        SplitInstance inst = split(a, s.property);
        EXPECT_TRUE(check2(inst.sat_model, inst.sat_formula)) << n;
    }
}

TEST(Split, UndefinedInstanceFailsBothChecks)
{
    ThreeCgs g = test::may_only_witness();
    Formula phi = parse("E x (a,x) F p");
    ASSERT_EQ(check3(g, phi), Truth::Undef);
    SplitInstance inst = split(g, phi);
    EXPECT_FALSE(check2(inst.sat_model, inst.sat_formula));
    EXPECT_FALSE(check2(inst.viol_model, inst.viol_formula));

    ThreeCgs a = test::a1();
    Formula psi = parse("E x (a,x) F p");
    ASSERT_EQ(check3(a, psi), Truth::Undef);
    inst = split(a, psi);
    EXPECT_FALSE(check2(inst.sat_model, inst.sat_formula));
    EXPECT_FALSE(check2(inst.viol_model, inst.viol_formula));
}

TEST(Split, AgreesWithDirectCheck)
{
    Rng rng(62);
    for (int i = 0; i < 300; ++i) {
        ThreeCgs g = test::random_three(rng, {4, 2, 2, {"p", "q"}});
        Formula phi = test::random_fragment_sentence(rng, 4, g.agents(), g.atoms());
        for (auto m : {ReleaseMode::Inclusive, ReleaseMode::Standard}) {
            EvalOptions o;
            o.release = m;
            ASSERT_EQ(check_split(g, phi, o), check3(g, phi, o)) << print(phi) << "\n" << save(g);
        }
    }
}

TEST(Split, JsonCarriesBothInstances)
{
    SplitInstance inst = split(test::a1(), parse("E x (a,x) F d"));
    auto j = nlohmann::json::parse(to_json(inst));
    EXPECT_EQ(load_concrete(j.at("sat").at("model").dump()), inst.sat_model);
    EXPECT_EQ(load_concrete(j.at("viol").at("model").dump()), inst.viol_model);
    EXPECT_EQ(parse(j.at("sat").at("formula").get<std::string>()), inst.sat_formula);
}

TEST(Split, RejectsNonSentences)
{
    EXPECT_THROW(split(test::a1(), parse("E x F d")), NotASentence);
}

} // namespace
} // namespace tristrat
