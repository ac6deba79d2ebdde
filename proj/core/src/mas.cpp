#include "normsys/mas.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "normsys/error.hpp"

namespace normsys {

namespace {

template <typename Map>
auto lookup(const Map& map, std::string_view name)
    -> std::optional<typename Map::mapped_type> {
  auto it = map.find(std::string(name));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<AgentId> Mas::find_agent(std::string_view name) const {
  return lookup(agent_index_, name);
}

std::optional<StateId> Mas::find_state(std::string_view name) const {
  return lookup(state_index_, name);
}

std::optional<ActionId> Mas::find_action(AgentId agent, std::string_view name) const {
  if (agent >= action_index_.size()) return std::nullopt;
  return lookup(action_index_[agent], name);
}

std::optional<PropId> Mas::find_prop(std::string_view name) const {
  return lookup(prop_index_, name);
}

bool Mas::is_initial(StateId state) const {
  return std::binary_search(initial_.begin(), initial_.end(), state);
}

std::span<const Transition> Mas::transitions_from(StateId state) const {
  if (state >= states_.size()) throw Error("unknown state id " + std::to_string(state));
  return std::span<const Transition>(transitions_.data() + first_transition_[state],
                                     first_transition_[state + 1] - first_transition_[state]);
}

std::size_t Mas::joint_count(StateId state) const {
  if (state >= states_.size()) throw Error("unknown state id " + std::to_string(state));
  std::size_t count = 1;
  for (const auto& per_agent : availability_) count *= per_agent[state].size();
  return count;
}

std::optional<std::uint32_t> Mas::joint_index(StateId state, const JointAction& action) const {
  if (state >= states_.size() || action.arity() != agents_.size()) return std::nullopt;
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& avail = availability_[i][state];
    auto it = std::lower_bound(avail.begin(), avail.end(), action.local[i]);
    if (it == avail.end() || *it != action.local[i]) return std::nullopt;
    index = index * avail.size() + static_cast<std::uint64_t>(it - avail.begin());
  }
  return static_cast<std::uint32_t>(index);
}

JointAction Mas::joint_at(StateId state, std::uint32_t index) const {
  if (index >= joint_count(state)) throw Error("joint action index out of range");
  JointAction action;
  action.local.resize(agents_.size());
  for (std::size_t i = agents_.size(); i-- > 0;) {
    const auto& avail = availability_[i][state];
    action.local[i] = avail[index % avail.size()];
    index /= static_cast<std::uint32_t>(avail.size());
  }
  return action;
}

bool operator==(const Mas& a, const Mas& b) {
  if (a.agents_ != b.agents_ || a.actions_ != b.actions_ || a.states_ != b.states_) return false;
  if (a.availability_ != b.availability_ || a.observations_ != b.observations_) return false;
  if (a.initial_ != b.initial_) return false;
  if (a.transitions_.size() != b.transitions_.size()) return false;
  for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
    const auto& x = a.transitions_[i];
    const auto& y = b.transitions_[i];
    if (x.source != y.source || x.target != y.target || x.action != y.action) return false;
  }
  for (std::size_t s = 0; s < a.states_.size(); ++s) {
    std::set<std::string> la;
    std::set<std::string> lb;
    for (PropId p : a.labels_[s]) la.insert(a.props_[p]);
    for (PropId p : b.labels_[s]) lb.insert(b.props_[p]);
    if (la != lb) return false;
  }
  return true;
}

void MasBuilder::check_agent(AgentId agent) const {
  if (agent >= mas_.agents_.size()) throw Error("unknown agent id " + std::to_string(agent));
}

void MasBuilder::check_state(StateId state) const {
  if (state >= mas_.states_.size()) throw Error("unknown state id " + std::to_string(state));
}

AgentId MasBuilder::add_agent(std::string name) {
  if (!mas_.states_.empty()) throw Error("agents must be declared before states");
  if (mas_.agent_index_.count(name)) throw Error("duplicate agent '" + name + "'");
  auto id = static_cast<AgentId>(mas_.agents_.size());
  mas_.agent_index_.emplace(name, id);
  mas_.agents_.push_back(std::move(name));
  mas_.actions_.emplace_back();
  mas_.action_index_.emplace_back();
  mas_.availability_.emplace_back();
  mas_.observations_.emplace_back();
  pending_obs_.emplace_back();
  return id;
}

ActionId MasBuilder::add_action(AgentId agent, std::string name) {
  check_agent(agent);
  auto& index = mas_.action_index_[agent];
  if (index.count(name)) {
    throw Error("duplicate action '" + name + "' for agent '" + mas_.agents_[agent] + "'");
  }
  auto id = static_cast<ActionId>(mas_.actions_[agent].size());
  index.emplace(name, id);
  mas_.actions_[agent].push_back(std::move(name));
  return id;
}

StateId MasBuilder::add_state(std::string name) {
  if (mas_.state_index_.count(name)) throw Error("duplicate state '" + name + "'");
  auto id = static_cast<StateId>(mas_.states_.size());
  mas_.state_index_.emplace(name, id);
  mas_.states_.push_back(std::move(name));
  for (std::size_t i = 0; i < mas_.agents_.size(); ++i) {
    mas_.availability_[i].emplace_back();
    pending_obs_[i].emplace_back();
  }
  mas_.labels_.emplace_back();
  return id;
}

PropId MasBuilder::add_prop(std::string name) {
  if (auto it = mas_.prop_index_.find(name); it != mas_.prop_index_.end()) return it->second;
  auto id = static_cast<PropId>(mas_.props_.size());
  mas_.prop_index_.emplace(name, id);
  mas_.props_.push_back(std::move(name));
  return id;
}

void MasBuilder::set_available(AgentId agent, StateId state, std::vector<ActionId> actions) {
  check_agent(agent);
  check_state(state);
  for (ActionId a : actions) {
    if (a >= mas_.actions_[agent].size()) throw Error("unknown action id " + std::to_string(a));
  }
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  mas_.availability_[agent][state] = std::move(actions);
}

void MasBuilder::set_observation(AgentId agent, StateId state, std::string value) {
  check_agent(agent);
  check_state(state);
  pending_obs_[agent][state] = std::move(value);
}

void MasBuilder::add_initial(StateId state) {
  check_state(state);
  mas_.initial_.push_back(state);
}

void MasBuilder::add_transition(StateId source, JointAction action, StateId target) {
  check_state(source);
  check_state(target);
  if (action.arity() != mas_.agents_.size()) {
    throw Error("joint action arity " + std::to_string(action.arity()) + " does not match " +
                std::to_string(mas_.agents_.size()) + " agents");
  }
  for (std::size_t i = 0; i < action.arity(); ++i) {
    if (action.local[i] >= mas_.actions_[i].size()) {
      throw Error("unknown action id " + std::to_string(action.local[i]) + " for agent '" +
                  mas_.agents_[i] + "'");
    }
  }
  mas_.transitions_.push_back(Transition{source, std::move(action), target, kNoJointIndex});
}

void MasBuilder::add_label(StateId state, PropId prop) {
  check_state(state);
  if (prop >= mas_.props_.size()) throw Error("unknown proposition id " + std::to_string(prop));
  mas_.labels_[state].push_back(prop);
}

PropId MasBuilder::add_label(StateId state, std::string_view prop) {
  PropId id = add_prop(std::string(prop));
  add_label(state, id);
  return id;
}

std::optional<AgentId> MasBuilder::find_agent(std::string_view name) const {
  return lookup(mas_.agent_index_, name);
}
std::optional<StateId> MasBuilder::find_state(std::string_view name) const {
  return lookup(mas_.state_index_, name);
}
std::optional<ActionId> MasBuilder::find_action(AgentId agent, std::string_view name) const {
  if (agent >= mas_.action_index_.size()) return std::nullopt;
  return lookup(mas_.action_index_[agent], name);
}
std::optional<PropId> MasBuilder::find_prop(std::string_view name) const {
  return lookup(mas_.prop_index_, name);
}

MasPtr MasBuilder::build() {
  Mas& m = mas_;
  for (std::size_t i = 0; i < m.agents_.size(); ++i) {
    m.observations_[i].resize(m.states_.size());
    for (std::size_t s = 0; s < m.states_.size(); ++s) {
      m.observations_[i][s] = pending_obs_[i][s] ? std::move(*pending_obs_[i][s]) : m.states_[s];
    }
  }
  std::sort(m.initial_.begin(), m.initial_.end());
  m.initial_.erase(std::unique(m.initial_.begin(), m.initial_.end()), m.initial_.end());
  for (auto& labels : m.labels_) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }

  for (auto& t : m.transitions_) {
    t.joint_index = m.joint_index(t.source, t.action).value_or(kNoJointIndex);
  }
  auto key = [](const Transition& t) {
    return std::tie(t.source, t.joint_index, t.action, t.target);
  };
  std::sort(m.transitions_.begin(), m.transitions_.end(),
            [&](const Transition& a, const Transition& b) { return key(a) < key(b); });
  m.transitions_.erase(std::unique(m.transitions_.begin(), m.transitions_.end(),
                                   [&](const Transition& a, const Transition& b) {
                                     return key(a) == key(b);
                                   }),
                       m.transitions_.end());
  m.first_transition_.assign(m.states_.size() + 1, 0);
  for (const auto& t : m.transitions_) ++m.first_transition_[t.source + 1];
  for (std::size_t s = 0; s < m.states_.size(); ++s) {
    m.first_transition_[s + 1] += m.first_transition_[s];
  }

  auto result = std::shared_ptr<Mas>(new Mas(std::move(mas_)));
  mas_ = Mas();
  pending_obs_.clear();
  return result;
}

std::vector<JointAction> available_joint_actions(const Mas& mas, StateId state) {
  if (state >= mas.state_count()) throw Error("unknown state id " + std::to_string(state));
  std::vector<JointAction> result;
  const std::size_t count = mas.joint_count(state);
  result.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    result.push_back(mas.joint_at(state, static_cast<std::uint32_t>(i)));
  }
  return result;
}

std::string format_joint_action(const Mas& mas, const JointAction& action) {
  std::string out;
  for (std::size_t i = 0; i < action.arity(); ++i) {
    if (i) out += ' ';
    out += mas.action_name(static_cast<AgentId>(i), action.local[i]);
  }
  return out;
}

}  // namespace normsys
