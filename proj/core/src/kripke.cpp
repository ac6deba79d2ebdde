#include "normsys/kripke.hpp"

#include <algorithm>
#include <deque>

#include "normsys/error.hpp"
#include "normsys/validation.hpp"

namespace normsys {

namespace {

std::uint64_t key(ProductState p) {
  return (static_cast<std::uint64_t>(p.state) << 32) | p.norm;
}

}  // namespace

KripkeStructure::KripkeStructure(MasPtr mas, std::shared_ptr<const NormativeSystem> norm)
    : mas_(std::move(mas)), norm_(std::move(norm)) {
  if (!mas_ || !norm_) throw Error("Kripke structure needs a system and a norm");
  if (norm_->state_count() != mas_->state_count()) {
    throw Error("norm and system disagree on the number of states");
  }
}

std::vector<ProductState> KripkeStructure::initial_states() const {
  std::vector<ProductState> result;
  for (StateId s : mas_->initial()) result.push_back({s, norm_->initial()});
  return result;
}

bool KripkeStructure::is_initial(ProductState p) const {
  return p.norm == norm_->initial() && mas_->is_initial(p.state);
}

std::vector<ProductState> KripkeStructure::successors(ProductState p) const {
  std::vector<ProductState> result;
  const auto forbidden = norm_->forbidden(p.state, p.norm);
  for (const auto& t : mas_->transitions_from(p.state)) {
    if (t.joint_index == kNoJointIndex) continue;
    if (std::binary_search(forbidden.begin(), forbidden.end(), t.joint_index)) continue;
    result.push_back({t.target, norm_->update(p.norm, t.target)});
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool KripkeStructure::has_edge(ProductState from, ProductState to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::string KripkeStructure::describe(ProductState p) const {
  return "(" + mas_->state_name(p.state) + ", " + norm_->norm_state_name(p.norm) + ")";
}

KripkeStructure apply_norm(MasPtr mas, std::shared_ptr<const NormativeSystem> norm) {
  if (!mas || !norm) throw Error("apply_norm needs a system and a norm");
  ValidationReport report = validate_mas(*mas);
  if (report.ok()) report = validate_norm(*mas, *norm);
  if (!report.ok()) throw ValidationError(std::move(report));
  return KripkeStructure(std::move(mas), std::move(norm));
}

KripkeStructure apply_norm(MasPtr mas, NormativeSystem norm) {
  return apply_norm(std::move(mas), std::make_shared<const NormativeSystem>(std::move(norm)));
}

std::optional<NodeId> ReachableProduct::find(ProductState p) const {
  auto it = index.find(key(p));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ReachableProduct reachable(const KripkeStructure& k) {
  ReachableProduct r;
  r.graph.propositions = k.mas().propositions();
  std::deque<NodeId> queue;
  auto intern = [&](ProductState p) {
    auto [it, inserted] = r.index.emplace(key(p), static_cast<NodeId>(r.states.size()));
    if (inserted) {
      r.states.push_back(p);
      r.graph.successors.emplace_back();
      auto labels = k.labels(p);
      r.graph.labels.emplace_back(labels.begin(), labels.end());
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (ProductState p : k.initial_states()) r.graph.initial.push_back(intern(p));
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    std::vector<NodeId> succ;
    for (ProductState p : k.successors(r.states[v])) succ.push_back(intern(p));
    std::sort(succ.begin(), succ.end());
    r.graph.successors[v] = std::move(succ);
  }
  return r;
}

}  // namespace normsys
