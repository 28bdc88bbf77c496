#include "fixtures.hpp"

namespace tristrat::test {

ConcreteCgs m1()
{
    ConcreteCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"s0", "s1"};
    d.actions = {"alpha", "beta"};
    d.atoms = {"p"};
    d.transition = {0, 1, 1, 1};
    d.label = {false, true};
    return ConcreteCgs::from_indexed(d);
}

std::string m1_json()
{
    return R"({
  "schema": "tristrat-cgs/1",
  "kind": "concrete",
  "agents": ["a"],
  "states": ["s0", "s1"],
  "initial": "s0",
  "actions": ["alpha", "beta"],
  "atoms": ["p"],
  "transitions": [
    {"state": "s0", "action_profile": ["alpha"], "successors": ["s0"]},
    {"state": "s0", "action_profile": ["beta"], "successors": ["s1"]},
    {"state": "s1", "action_profile": ["alpha"], "successors": ["s1"]},
    {"state": "s1", "action_profile": ["beta"], "successors": ["s1"]}
  ],
  "labels": {"s0": {"p": "false"}, "s1": {"p": "true"}}
})";
}

ConcreteCgs c2()
{
    ConcreteCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"t0", "t1", "t2", "t3"};
    d.actions = {"a", "b"};
    d.atoms = {"d", "p"};
    d.transition = {1, 3, 2, 3, 2, 3, 3, 3};
    d.label = {false, false, false, false, false, true, true, false};
    return ConcreteCgs::from_indexed(d);
}

Partition c2_partition(const ConcreteCgs& g) { return Partition::from_blocks(g, {{"t0"}, {"t1", "t2"}, {"t3"}}); }

ThreeCgs a1()
{
    ConcreteCgs g = c2();
    return abstract(g, c2_partition(g)).model;
}

ThreeCgs undef_path()
{
    ThreeCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"u", "v"};
    d.actions_may = {"a"};
    d.atoms = {"p"};
    d.tau_may = {{1}, {1}};
    d.tau_must = {{}, {}};
    d.label = {Truth::False, Truth::Undef};
    return ThreeCgs::from_indexed(d);
}

ThreeCgs may_only_witness()
{
    ThreeCgs::Indexed d;
    d.agents = {"a"};
    d.states = {"u", "v", "w"};
    d.actions_may = {"a", "b"};
    d.actions_must = {"a"};
    d.atoms = {"p"};
    d.tau_may = {{0}, {1}, {1}, {1}, {2}, {2}};
    d.tau_must = {{0}, {1}, {1}, {1}, {2}, {2}};
    d.label = {Truth::False, Truth::True, Truth::False};
    return ThreeCgs::from_indexed(d);
}

} // namespace tristrat::test
