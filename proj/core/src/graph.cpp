#include "normsys/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace normsys {

std::optional<PropId> StateGraph::find_prop(std::string_view name) const {
  auto it = std::find(propositions.begin(), propositions.end(), name);
  if (it == propositions.end()) return std::nullopt;
  return static_cast<PropId>(it - propositions.begin());
}

std::vector<std::vector<NodeId>> StateGraph::predecessors() const {
  std::vector<std::vector<NodeId>> pred(successors.size());
  for (NodeId v = 0; v < successors.size(); ++v) {
    for (NodeId w : successors[v]) pred[w].push_back(v);
  }
  return pred;
}

bool StateGraph::is_serial() const {
  return std::all_of(successors.begin(), successors.end(),
                     [](const auto& succ) { return !succ.empty(); });
}

SccDecomposition tarjan_scc(const std::vector<std::vector<NodeId>>& successors,
                            const std::vector<bool>& keep) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = successors.size();
  auto allowed = [&](NodeId v) { return keep.empty() || keep[v]; };

  SccDecomposition result;
  result.component.assign(n, kUnvisited);
  std::vector<std::uint32_t> order(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (!allowed(root) || order[root] != kUnvisited) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& frame = call.back();
      const NodeId v = frame.node;
      if (frame.next < successors[v].size()) {
        const NodeId w = successors[v][frame.next++];
        if (!allowed(w)) continue;
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      if (low[v] == order[v]) {
        const auto id = static_cast<std::uint32_t>(result.members.size());
        std::vector<NodeId> members;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = id;
          members.push_back(w);
        } while (w != v);
        bool nontrivial = members.size() > 1;
        if (!nontrivial) {
          const auto& succ = successors[v];
          nontrivial = std::binary_search(succ.begin(), succ.end(), v) ||
                       std::find(succ.begin(), succ.end(), v) != succ.end();
        }
        std::sort(members.begin(), members.end());
        result.members.push_back(std::move(members));
        result.nontrivial.push_back(nontrivial);
      }
      call.pop_back();
      if (!call.empty()) {
        const NodeId parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return result;
}

std::optional<std::vector<NodeId>> shortest_path(const std::vector<std::vector<NodeId>>& successors,
                                                 std::span<const NodeId> sources, NodeId target,
                                                 const std::vector<bool>& keep) {
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  const std::size_t n = successors.size();
  auto allowed = [&](NodeId v) { return keep.empty() || keep[v]; };
  std::vector<NodeId> parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::deque<NodeId> queue;
  for (NodeId s : sources) {
    if (!allowed(s) || seen[s]) continue;
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    if (v == target) {
      std::vector<NodeId> path;
      for (NodeId x = v; x != kNone; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (NodeId w : successors[v]) {
      if (!allowed(w) || seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

}  // namespace normsys
