#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace normsys {

using AgentId = std::uint32_t;
using ActionId = std::uint32_t;
using StateId = std::uint32_t;
using PropId = std::uint32_t;

inline constexpr std::uint32_t kNoJointIndex = 0xffffffffu;

/// One local action per agent, in the system's agent order.
struct JointAction {
  std::vector<ActionId> local;

  std::size_t arity() const noexcept { return local.size(); }
  friend auto operator<=>(const JointAction&, const JointAction&) = default;
  friend bool operator==(const JointAction&, const JointAction&) = default;
};

struct Transition {
  StateId source = 0;
  JointAction action;
  StateId target = 0;
  /// Position of `action` in the source state's joint-action enumeration,
  /// or kNoJointIndex when some component is unavailable there.
  std::uint32_t joint_index = kNoJointIndex;
};

class MasBuilder;

/// A finite partial-observation multiagent system.
///
/// Built once through MasBuilder and immutable afterwards. Identifiers are
/// interned: agents, per-agent actions, states and propositions are referred
/// to by dense integer ids, with names kept for printing and parsing.
///
/// Well-formedness (nonempty availability, seriality, observation/availability
/// consistency, ...) is not enforced by construction; see validate_mas().
class Mas {
 public:
  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t prop_count() const noexcept { return props_.size(); }
  std::size_t action_count(AgentId agent) const { return actions_.at(agent).size(); }

  const std::string& agent_name(AgentId agent) const { return agents_.at(agent); }
  const std::string& state_name(StateId state) const { return states_.at(state); }
  const std::string& action_name(AgentId agent, ActionId action) const {
    return actions_.at(agent).at(action);
  }
  const std::string& prop_name(PropId prop) const { return props_.at(prop); }
  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& propositions() const noexcept { return props_; }

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(AgentId agent, std::string_view name) const;
  std::optional<PropId> find_prop(std::string_view name) const;

  /// L_i(s), sorted ascending.
  std::span<const ActionId> available(AgentId agent, StateId state) const {
    return availability_.at(agent).at(state);
  }
  /// O_i(s).
  const std::string& observation(AgentId agent, StateId state) const {
    return observations_.at(agent).at(state);
  }
  std::span<const StateId> initial() const noexcept { return initial_; }
  bool is_initial(StateId state) const;

  std::span<const Transition> transitions() const noexcept { return transitions_; }
  /// Transitions leaving `state`, ordered by joint index then target.
  std::span<const Transition> transitions_from(StateId state) const;

  /// pi(s), sorted ascending.
  std::span<const PropId> labels(StateId state) const { return labels_.at(state); }

  /// |prod_i L_i(s)|.
  std::size_t joint_count(StateId state) const;
  /// Mixed-radix position of `action` among the available joint actions at
  /// `state` (agent 0 most significant, each digit ordered by action id).
  std::optional<std::uint32_t> joint_index(StateId state, const JointAction& action) const;
  JointAction joint_at(StateId state, std::uint32_t index) const;

  /// Identifier-preserving equality: names, availability, observations,
  /// initial states, transitions and labels compared by name.
  friend bool operator==(const Mas& a, const Mas& b);

 private:
  friend class MasBuilder;
  Mas() = default;

  std::vector<std::string> agents_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::string> states_;
  std::vector<std::string> props_;
  std::vector<std::vector<std::vector<ActionId>>> availability_;  // [agent][state]
  std::vector<std::vector<std::string>> observations_;            // [agent][state]
  std::vector<StateId> initial_;
  std::vector<Transition> transitions_;     // sorted by (source, joint index, target)
  std::vector<std::size_t> first_transition_;  // per state, size state_count + 1
  std::vector<std::vector<PropId>> labels_;

  std::unordered_map<std::string, AgentId> agent_index_;
  std::vector<std::unordered_map<std::string, ActionId>> action_index_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, PropId> prop_index_;
};

using MasPtr = std::shared_ptr<const Mas>;

/// Incremental construction of a Mas. Duplicate names and out-of-range ids
/// throw normsys::Error; semantic invariants are left to validate_mas().
class MasBuilder {
 public:
  AgentId add_agent(std::string name);
  ActionId add_action(AgentId agent, std::string name);
  StateId add_state(std::string name);
  PropId add_prop(std::string name);

  void set_available(AgentId agent, StateId state, std::vector<ActionId> actions);
  /// Missing observations default to the state's name (full observability).
  void set_observation(AgentId agent, StateId state, std::string value);
  void add_initial(StateId state);
  void add_transition(StateId source, JointAction action, StateId target);
  void add_label(StateId state, PropId prop);
  PropId add_label(StateId state, std::string_view prop);

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(AgentId agent, std::string_view name) const;
  std::optional<PropId> find_prop(std::string_view name) const;
  const std::string& agent_name(AgentId agent) const { return mas_.agents_.at(agent); }
  std::size_t agent_count() const noexcept { return mas_.agents_.size(); }
  std::size_t state_count() const noexcept { return mas_.states_.size(); }

  /// Finalizes: sorts and deduplicates, fills default observations and
  /// computes joint indices. The builder is left empty.
  MasPtr build();

 private:
  void check_agent(AgentId agent) const;
  void check_state(StateId state) const;
  Mas mas_;
  std::vector<std::vector<std::optional<std::string>>> pending_obs_;  // [agent][state]
};

/// prod_i L_i(s), in joint-index order.
std::vector<JointAction> available_joint_actions(const Mas& mas, StateId state);

/// Renders a joint action as its space-separated local action names.
std::string format_joint_action(const Mas& mas, const JointAction& action);

}  // namespace normsys
