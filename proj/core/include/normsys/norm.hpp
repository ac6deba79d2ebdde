#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "normsys/mas.hpp"

namespace normsys {

using NormStateId = std::uint32_t;

/// A dynamic normative system (Q, forbids, update, q0) over a fixed Mas.
///
/// Forbidden joint actions are stored per (state, norm state) as sorted joint
/// indices into Mas::joint_at(state, .), so only available joint actions can
/// be forbidden. The update table is dense over Q x S and therefore total.
class NormativeSystem {
 public:
  NormativeSystem() = default;
  /// Norm with the given norm states over a system of `state_count` states;
  /// forbids nothing and self-updates everywhere.
  NormativeSystem(std::vector<std::string> norm_states, std::size_t state_count,
                  NormStateId initial = 0);

  /// |Q| = 1, forbids nothing.
  static NormativeSystem identity(const Mas& mas);

  std::size_t norm_state_count() const noexcept { return norm_states_.size(); }
  std::size_t state_count() const noexcept { return state_count_; }
  const std::string& norm_state_name(NormStateId q) const { return norm_states_.at(q); }
  const std::vector<std::string>& norm_states() const noexcept { return norm_states_; }
  std::optional<NormStateId> find_norm_state(std::string_view name) const;
  NormStateId initial() const noexcept { return initial_; }
  void set_initial(NormStateId q);

  /// Sorted joint indices forbidden at (s, q).
  std::span<const std::uint32_t> forbidden(StateId s, NormStateId q) const {
    return forbids_[slot(s, q)];
  }
  bool is_forbidden(StateId s, NormStateId q, std::uint32_t joint_index) const;
  void set_forbidden(StateId s, NormStateId q, std::vector<std::uint32_t> joint_indices);
  void forbid(StateId s, NormStateId q, std::uint32_t joint_index);

  NormStateId update(NormStateId q, StateId s) const { return update_[q * state_count_ + s]; }
  void set_update(NormStateId q, StateId s, NormStateId target);

  /// |Q| == 1 and the update is the constant map.
  bool is_static() const noexcept { return norm_states_.size() == 1; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  friend bool operator==(const NormativeSystem&, const NormativeSystem&) = default;

 private:
  std::size_t slot(StateId s, NormStateId q) const {
    return static_cast<std::size_t>(s) * norm_states_.size() + q;
  }

  std::string name_;
  std::vector<std::string> norm_states_;
  std::size_t state_count_ = 0;
  NormStateId initial_ = 0;
  std::vector<std::vector<std::uint32_t>> forbids_;  // [s * |Q| + q]
  std::vector<NormStateId> update_;                  // [q * |S| + s]
};

/// Static norm forbidding delta(s) at each state in delta's domain and
/// nothing elsewhere. Throws ValidationError when some delta(s) is not a
/// strict subset of the available joint actions, and Error on unknown
/// states or unavailable joint actions.
NormativeSystem make_static(const Mas& mas, const std::map<StateId, std::vector<JointAction>>& delta);

}  // namespace normsys
