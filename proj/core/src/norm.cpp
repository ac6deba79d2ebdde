#include "normsys/norm.hpp"

#include <algorithm>

#include "normsys/error.hpp"
#include "normsys/validation.hpp"

namespace normsys {

NormativeSystem::NormativeSystem(std::vector<std::string> norm_states, std::size_t state_count,
                                 NormStateId initial)
    : norm_states_(std::move(norm_states)), state_count_(state_count), initial_(initial) {
  if (norm_states_.empty()) throw Error("a normative system needs at least one norm state");
  if (initial_ >= norm_states_.size()) throw Error("initial norm state out of range");
  forbids_.resize(state_count_ * norm_states_.size());
  update_.resize(state_count_ * norm_states_.size());
  for (NormStateId q = 0; q < norm_states_.size(); ++q) {
    std::fill_n(update_.begin() + static_cast<std::ptrdiff_t>(q * state_count_), state_count_, q);
  }
}

NormativeSystem NormativeSystem::identity(const Mas& mas) {
  return NormativeSystem({"q0"}, mas.state_count());
}

std::optional<NormStateId> NormativeSystem::find_norm_state(std::string_view name) const {
  auto it = std::find(norm_states_.begin(), norm_states_.end(), name);
  if (it == norm_states_.end()) return std::nullopt;
  return static_cast<NormStateId>(it - norm_states_.begin());
}

void NormativeSystem::set_initial(NormStateId q) {
  if (q >= norm_states_.size()) throw Error("initial norm state out of range");
  initial_ = q;
}

bool NormativeSystem::is_forbidden(StateId s, NormStateId q, std::uint32_t joint_index) const {
  const auto& f = forbids_[slot(s, q)];
  return std::binary_search(f.begin(), f.end(), joint_index);
}

void NormativeSystem::set_forbidden(StateId s, NormStateId q,
                                    std::vector<std::uint32_t> joint_indices) {
  if (s >= state_count_ || q >= norm_states_.size()) throw Error("forbid slot out of range");
  std::sort(joint_indices.begin(), joint_indices.end());
  joint_indices.erase(std::unique(joint_indices.begin(), joint_indices.end()),
                      joint_indices.end());
  forbids_[slot(s, q)] = std::move(joint_indices);
}

void NormativeSystem::forbid(StateId s, NormStateId q, std::uint32_t joint_index) {
  if (s >= state_count_ || q >= norm_states_.size()) throw Error("forbid slot out of range");
  auto& f = forbids_[slot(s, q)];
  auto it = std::lower_bound(f.begin(), f.end(), joint_index);
  if (it == f.end() || *it != joint_index) f.insert(it, joint_index);
}

void NormativeSystem::set_update(NormStateId q, StateId s, NormStateId target) {
  if (q >= norm_states_.size() || target >= norm_states_.size() || s >= state_count_) {
    throw Error("update entry out of range");
  }
  update_[q * state_count_ + s] = target;
}

NormativeSystem make_static(const Mas& mas,
                            const std::map<StateId, std::vector<JointAction>>& delta) {
  NormativeSystem norm = NormativeSystem::identity(mas);
  ValidationReport report;
  for (const auto& [state, actions] : delta) {
    if (state >= mas.state_count()) throw Error("unknown state id " + std::to_string(state));
    std::vector<std::uint32_t> indices;
    for (const auto& a : actions) {
      auto index = mas.joint_index(state, a);
      if (!index) {
        throw Error("joint action (" + format_joint_action(mas, a) + ") is not available at " +
                    mas.state_name(state));
      }
      indices.push_back(*index);
    }
    norm.set_forbidden(state, 0, std::move(indices));
    if (norm.forbidden(state, 0).size() >= mas.joint_count(state)) {
      report.violations.push_back(
          {"strict-subset", "every available joint action forbidden at " + mas.state_name(state)});
    }
  }
  if (!report.ok()) throw ValidationError(std::move(report));
  return norm;
}

}  // namespace normsys
