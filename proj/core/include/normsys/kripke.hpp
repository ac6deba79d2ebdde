#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "normsys/graph.hpp"
#include "normsys/mas.hpp"
#include "normsys/norm.hpp"

namespace normsys {

/// A state (s, q) of the norm-applied product.
struct ProductState {
  StateId state = 0;
  NormStateId norm = 0;

  friend auto operator<=>(const ProductState&, const ProductState&) = default;
  friend bool operator==(const ProductState&, const ProductState&) = default;
};

/// The Kripke structure obtained by applying a norm to a system.
///
/// States are all pairs S x Q; edges are computed on demand: (s1,q1) -> (s2,q2)
/// iff some available joint action a not forbidden at (s1,q1) has
/// (s1,a,s2) in T, and q2 = update(q1, s2).
class KripkeStructure {
 public:
  KripkeStructure(MasPtr mas, std::shared_ptr<const NormativeSystem> norm);

  const Mas& mas() const noexcept { return *mas_; }
  const MasPtr& mas_ptr() const noexcept { return mas_; }
  const NormativeSystem& norm() const noexcept { return *norm_; }
  const std::shared_ptr<const NormativeSystem>& norm_ptr() const noexcept { return norm_; }

  std::size_t state_count() const noexcept {
    return mas_->state_count() * norm_->norm_state_count();
  }
  /// I x {q0}.
  std::vector<ProductState> initial_states() const;
  bool is_initial(ProductState p) const;
  /// Sorted, deduplicated successors of p.
  std::vector<ProductState> successors(ProductState p) const;
  bool has_edge(ProductState from, ProductState to) const;
  /// pi(s).
  std::span<const PropId> labels(ProductState p) const { return mas_->labels(p.state); }

  std::string describe(ProductState p) const;

 private:
  MasPtr mas_;
  std::shared_ptr<const NormativeSystem> norm_;
};

/// Validates both inputs (throwing ValidationError) and builds K(N_M).
KripkeStructure apply_norm(MasPtr mas, NormativeSystem norm);
KripkeStructure apply_norm(MasPtr mas, std::shared_ptr<const NormativeSystem> norm);

/// The part of a Kripke structure reachable from its initial states, as an
/// explicit graph whose node i stands for states[i].
struct ReachableProduct {
  std::vector<ProductState> states;  // breadth-first discovery order
  StateGraph graph;
  std::unordered_map<std::uint64_t, NodeId> index;

  std::size_t size() const noexcept { return states.size(); }
  std::optional<NodeId> find(ProductState p) const;
};

/// Least set containing I and closed under the edge relation.
ReachableProduct reachable(const KripkeStructure& k);

}  // namespace normsys
