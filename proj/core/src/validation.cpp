#include "normsys/validation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace normsys {

bool ValidationReport::mentions(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) out << "  [" << v.rule << "] " << v.detail << '\n';
  return out.str();
}

ValidationReport validate_mas(const Mas& mas) {
  ValidationReport report;
  auto add = [&](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };

  if (mas.agent_count() == 0) add("no-agents", "the system declares no agents");
  if (mas.state_count() == 0) add("no-states", "the system declares no states");
  if (mas.initial().empty()) add("no-initial", "the set of initial states is empty");

  // Seriality is only meaningful where every agent has some action.
  std::vector<bool> availability_ok(mas.state_count(), true);
  for (AgentId i = 0; i < mas.agent_count(); ++i) {
    for (StateId s = 0; s < mas.state_count(); ++s) {
      if (mas.available(i, s).empty()) {
        availability_ok[s] = false;
        add("empty-availability",
            "agent " + mas.agent_name(i) + " has no available action at " + mas.state_name(s));
      }
    }
  }

  for (const auto& t : mas.transitions()) {
    if (t.joint_index == kNoJointIndex) {
      add("unavailable-action", "transition " + mas.state_name(t.source) + " -> " +
                                    mas.state_name(t.target) + " on (" +
                                    format_joint_action(mas, t.action) +
                                    ") uses an action unavailable at its source");
    }
  }

  if (mas.agent_count() > 0) {
    for (StateId s = 0; s < mas.state_count(); ++s) {
      if (!availability_ok[s]) continue;
      std::vector<bool> covered(mas.joint_count(s), false);
      for (const auto& t : mas.transitions_from(s)) {
        if (t.joint_index != kNoJointIndex) covered[t.joint_index] = true;
      }
      for (std::size_t j = 0; j < covered.size(); ++j) {
        if (!covered[j]) {
          add("seriality", "no transition from " + mas.state_name(s) + " on (" +
                               format_joint_action(mas, mas.joint_at(s, static_cast<std::uint32_t>(j))) +
                               ")");
        }
      }
    }
  }

  for (AgentId i = 0; i < mas.agent_count(); ++i) {
    std::unordered_map<std::string, StateId> witness;
    for (StateId s = 0; s < mas.state_count(); ++s) {
      auto [it, inserted] = witness.emplace(mas.observation(i, s), s);
      if (inserted) continue;
      StateId u = it->second;
      auto a = mas.available(i, u);
      auto b = mas.available(i, s);
      if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        add("observation-availability",
            "agent " + mas.agent_name(i) + " observes '" + mas.observation(i, s) + "' at both " +
                mas.state_name(u) + " and " + mas.state_name(s) +
                " but has different available actions");
      }
    }
  }
  return report;
}

ValidationReport validate_norm(const Mas& mas, const NormativeSystem& norm) {
  ValidationReport report;
  auto add = [&](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };
  if (norm.norm_state_count() == 0) {
    add("no-norm-states", "the normative system has no norm states");
    return report;
  }
  if (norm.state_count() != mas.state_count()) {
    add("state-count", "norm is defined over " + std::to_string(norm.state_count()) +
                           " states but the system has " + std::to_string(mas.state_count()));
    return report;
  }
  if (norm.initial() >= norm.norm_state_count()) add("initial-norm", "initial norm state out of range");

  for (StateId s = 0; s < mas.state_count(); ++s) {
    const std::size_t available = mas.joint_count(s);
    for (NormStateId q = 0; q < norm.norm_state_count(); ++q) {
      auto f = norm.forbidden(s, q);
      if (!f.empty() && f.back() >= available) {
        add("forbid-range", "forbidden joint index out of range at (" + mas.state_name(s) + ", " +
                                norm.norm_state_name(q) + ")");
      } else if (f.size() >= available) {
        add("strict-subset", "every available joint action is forbidden at (" +
                                 mas.state_name(s) + ", " + norm.norm_state_name(q) + ")");
      }
      if (norm.update(q, s) >= norm.norm_state_count()) {
        add("update-total", "update of (" + norm.norm_state_name(q) + ", " + mas.state_name(s) +
                                ") leaves the norm state set");
      }
    }
  }
  return report;
}

}  // namespace normsys
