#pragma once

// Concurrent game structures.
//
// Both model kinds store identifiers as sorted string tables and refer to
// them by dense index. A joint action (action profile) is a tuple with one
// action per agent in sorted agent order; it is encoded as a mixed-radix
// integer with the first agent as the most significant digit.

#include "tristrat/truth.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tristrat {

using StateId = std::uint32_t;
using ActionId = std::uint16_t;
using ProfileId = std::uint64_t;

enum class Mode : unsigned char { May, Must };

/// Positional strategy: one action index per state.
struct Strategy {
    std::vector<ActionId> at;

    ActionId operator()(StateId s) const { return at[s]; }
    friend bool operator==(const Strategy&, const Strategy&) = default;
    friend auto operator<=>(const Strategy&, const Strategy&) = default;
};

/// Partial map from variables and agents to positional strategies.
struct Assignment {
    std::map<std::string, Strategy> vars;
    std::map<std::string, Strategy> agents;

    bool complete(std::span<const std::string> model_agents) const;
};

/// Mixed-radix codec for action profiles.
class ProfileCodec {
public:
    ProfileCodec() = default;
    ProfileCodec(std::size_t agents, std::size_t actions);

    std::size_t agents() const noexcept { return agents_; }
    std::size_t actions() const noexcept { return actions_; }
    ProfileId count() const noexcept { return count_; }

    ProfileId encode(std::span<const ActionId> profile) const;
    std::vector<ActionId> decode(ProfileId id) const;
    ActionId digit(ProfileId id, std::size_t agent) const;

    friend bool operator==(const ProfileCodec&, const ProfileCodec&) = default;

private:
    std::size_t agents_ = 0;
    std::size_t actions_ = 0;
    ProfileId count_ = 1;
    std::vector<ProfileId> weight_;
};

/// Deterministic two-valued CGS: every agent may play every action in every
/// state, and each (state, profile) has exactly one successor.
class ConcreteCgs {
public:
    struct Indexed {
        std::vector<std::string> agents;
        std::vector<std::string> states;
        StateId initial = 0;
        std::vector<std::string> actions;
        std::vector<std::string> atoms;
        /// states x profiles, profiles encoded over the order given here.
        std::vector<StateId> transition;
        /// states x atoms.
        std::vector<bool> label;
    };

    /// Sorts every identifier table, remaps indices, and validates.
    /// Throws ValidationError.
    static ConcreteCgs from_indexed(Indexed data);

    const std::vector<std::string>& agents() const noexcept { return agents_; }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& actions() const noexcept { return actions_; }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    StateId initial() const noexcept { return initial_; }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_agents() const noexcept { return agents_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    const ProfileCodec& profiles() const noexcept { return codec_; }

    StateId successor(StateId s, ProfileId p) const { return transition_[s * codec_.count() + p]; }
    bool label(StateId s, std::size_t atom) const { return label_[s * atoms_.size() + atom]; }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    std::optional<std::size_t> find_atom(std::string_view name) const;
    std::optional<std::size_t> find_agent(std::string_view name) const;

    /// Number of distinct (source, target) edges.
    std::size_t edge_count() const;

    friend bool operator==(const ConcreteCgs&, const ConcreteCgs&) = default;

private:
    std::vector<std::string> agents_, states_, actions_, atoms_;
    StateId initial_ = 0;
    ProfileCodec codec_;
    std::vector<StateId> transition_;
    std::vector<bool> label_;
};

/// Three-valued CGS with may/must actions and nondeterministic may/must
/// transitions. Must transitions are stored sparsely: an empty entry is the
/// empty successor set.
class ThreeCgs {
public:
    struct Indexed {
        std::vector<std::string> agents;
        std::vector<std::string> states;
        StateId initial = 0;
        std::vector<std::string> actions_may;
        /// Subset of actions_may, by name.
        std::vector<std::string> actions_must;
        std::vector<std::string> atoms;
        /// states x may-profiles successor sets.
        std::vector<std::vector<StateId>> tau_may;
        std::vector<std::vector<StateId>> tau_must;
        /// states x atoms.
        std::vector<Truth> label;
    };

    /// Sorts identifier tables and successor sets, remaps, validates.
    /// Throws ValidationError.
    static ThreeCgs from_indexed(Indexed data);

    const std::vector<std::string>& agents() const noexcept { return agents_; }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& actions_may() const noexcept { return actions_; }
    std::vector<std::string> actions_must() const;
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    StateId initial() const noexcept { return initial_; }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_agents() const noexcept { return agents_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    std::size_t num_must_actions() const noexcept;
    bool is_must_action(ActionId a) const { return must_[a]; }
    const ProfileCodec& profiles() const noexcept { return codec_; }

    /// True iff every digit of the profile is a must action.
    bool is_must_profile(ProfileId p) const;

    const std::vector<StateId>& successors(StateId s, ProfileId p, Mode mode) const
    {
        const auto& table = mode == Mode::May ? tau_may_ : tau_must_;
        return table[s * codec_.count() + p];
    }

    /// Name-based lookup. Throws UnknownState / UnknownAction.
    const std::vector<StateId>& successors(std::string_view state,
                                           std::span<const std::string> profile, Mode mode) const;

    Truth label(StateId s, std::size_t atom) const { return label_[s * atoms_.size() + atom]; }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    std::optional<std::size_t> find_atom(std::string_view name) const;
    std::optional<std::size_t> find_agent(std::string_view name) const;

    /// Distinct (source, target) edges of the may / must relation.
    std::size_t edge_count(Mode mode) const;

    friend bool operator==(const ThreeCgs&, const ThreeCgs&) = default;

private:
    std::vector<std::string> agents_, states_, actions_, atoms_;
    std::vector<bool> must_;
    StateId initial_ = 0;
    ProfileCodec codec_;
    std::vector<std::vector<StateId>> tau_may_, tau_must_;
    std::vector<Truth> label_;
};

/// Lift a concrete model to a three-valued one with may = must.
ThreeCgs embed(const ConcreteCgs& g);

/// Either kind of model plus an optional explicit partition, as found in a
/// model document.
struct ModelDocument {
    std::variant<ConcreteCgs, ThreeCgs> model;
    std::optional<std::vector<std::vector<std::string>>> partition;
};

inline constexpr std::string_view kSchemaVersion = "tristrat-cgs/1";

/// Throws ParseError or ValidationError.
ModelDocument load_document(std::string_view json_text);
ConcreteCgs load_concrete(std::string_view json_text);
ThreeCgs load_three(std::string_view json_text);

std::string save(const ConcreteCgs& g,
                 const std::optional<std::vector<std::vector<std::string>>>& partition = std::nullopt);
std::string save(const ThreeCgs& g);

} // namespace tristrat
