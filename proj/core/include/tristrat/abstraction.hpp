#pragma once

// Three-valued abstraction of a concrete model by a partition of its states.

#include "tristrat/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace tristrat {

/// Blocks are ordered by their canonical name, the lexicographically
/// smallest member; block i becomes abstract state i.
struct Partition {
    std::vector<std::vector<StateId>> blocks;
    std::vector<std::size_t> class_of;

    /// Throws InvalidPartition.
    static Partition from_blocks(const ConcreteCgs& g, const std::vector<std::vector<std::string>>& blocks);
    /// Throws InvalidPartition.
    static Partition from_classes(const ConcreteCgs& g, const std::vector<std::size_t>& class_of);
    static Partition singletons(const ConcreteCgs& g);

    std::size_t size() const noexcept { return blocks.size(); }
    std::vector<std::vector<std::string>> names(const ConcreteCgs& g) const;
};

/// Blocks of states agreeing on every given atom. Throws UnknownAtom.
Partition partition_by_atoms(const ConcreteCgs& g, const std::set<std::string>& atoms);

struct AbstractionReport {
    std::size_t concrete_states = 0;
    std::size_t concrete_transitions = 0;
    std::size_t abstract_states = 0;
    std::size_t may_transitions = 0;
    std::size_t must_transitions = 0;
    std::vector<std::string> must_actions;
    /// The must-action set came from greedy removal, not exact search.
    bool heuristic = false;
    double build_seconds = 0;
};

struct Abstraction {
    ThreeCgs model;
    AbstractionReport report;
};

/// Throws InvalidPartition.
Abstraction abstract(const ConcreteCgs& g, const Partition& part);

/// Largest action set A such that every profile over A has a nonempty must
/// successor set in every state; ties go to the lexicographically smallest
/// set. Exact up to 16 actions, greedy beyond (flagged through `heuristic`).
/// `bad_profiles` lists, as action-index tuples, every profile whose must
/// successor set is empty somewhere.
std::vector<ActionId> max_must_actions(std::size_t num_actions,
                                       const std::vector<std::vector<ActionId>>& bad_profiles, bool* heuristic);

/// Abstract positional strategies choosing, in each block, an action the
/// concrete strategy takes at some member.
std::vector<Strategy> lift_strategy_may(const Strategy& f, const Partition& part);
/// lift_strategy_may restricted to must actions of the abstract model.
std::vector<Strategy> lift_strategy_must(const Strategy& f, const Partition& part, const ThreeCgs& abstract_model);
/// Concrete strategy playing the block's action at every member.
Strategy concretize(const Strategy& f, const Partition& part);

std::string to_json(const AbstractionReport& r);

} // namespace tristrat
