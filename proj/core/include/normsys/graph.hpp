#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normsys/mas.hpp"

namespace normsys {

using NodeId = std::uint32_t;

/// Explicit labeled directed graph; the common currency of the model
/// checker and the recognition algorithms.
struct StateGraph {
  std::vector<std::vector<NodeId>> successors;  // sorted, deduplicated
  std::vector<NodeId> initial;
  std::vector<std::vector<PropId>> labels;      // sorted; may be empty
  std::vector<std::string> propositions;        // PropId -> name

  std::size_t size() const noexcept { return successors.size(); }
  std::optional<PropId> find_prop(std::string_view name) const;
  std::vector<std::vector<NodeId>> predecessors() const;
  bool is_serial() const;
};

/// Strongly connected components (Tarjan, iterative). `component[v]` is the
/// index of v's component; components are numbered in reverse topological
/// order of the condensation.
struct SccDecomposition {
  std::vector<std::uint32_t> component;
  std::vector<std::vector<NodeId>> members;
  /// Component has more than one node or a self-loop.
  std::vector<bool> nontrivial;
};

/// SCCs of the subgraph induced by `keep` (all nodes when empty).
SccDecomposition tarjan_scc(const std::vector<std::vector<NodeId>>& successors,
                            const std::vector<bool>& keep = {});

/// Shortest path (inclusive) from any node in `sources` to `target`, moving
/// only through nodes allowed by `keep` (all when empty).
std::optional<std::vector<NodeId>> shortest_path(const std::vector<std::vector<NodeId>>& successors,
                                                 std::span<const NodeId> sources, NodeId target,
                                                 const std::vector<bool>& keep = {});

}  // namespace normsys
