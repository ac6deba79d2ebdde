#include <doctest.h>

#include <algorithm>

#include "normsys/graph.hpp"

using namespace normsys;

TEST_SUITE("graph") {
  TEST_CASE("tarjan finds components in reverse topological order") {
    // 0 -> 1 <-> 2 -> 3, 3 self-loop, 4 isolated.
    const std::vector<std::vector<NodeId>> succ = {{1}, {2}, {1, 3}, {3}, {}};
    const SccDecomposition scc = tarjan_scc(succ);
    CHECK(scc.members.size() == 4);
    CHECK(scc.component[1] == scc.component[2]);
    CHECK(scc.component[3] < scc.component[1]);
    CHECK(scc.component[1] < scc.component[0]);
    CHECK(scc.nontrivial[scc.component[1]]);
    CHECK(scc.nontrivial[scc.component[3]]);
    CHECK_FALSE(scc.nontrivial[scc.component[0]]);
    CHECK_FALSE(scc.nontrivial[scc.component[4]]);
  }

  TEST_CASE("tarjan respects the kept subgraph") {
    const std::vector<std::vector<NodeId>> succ = {{1}, {0}};
    const SccDecomposition scc = tarjan_scc(succ, {true, false});
    CHECK_FALSE(scc.nontrivial[scc.component[0]]);
  }

  TEST_CASE("tarjan is iterative on long chains") {
    std::vector<std::vector<NodeId>> succ(200000);
    for (NodeId v = 0; v + 1 < succ.size(); ++v) succ[v] = {v + 1};
    succ.back() = {0};
    const SccDecomposition scc = tarjan_scc(succ);
    CHECK(scc.members.size() == 1);
  }

  TEST_CASE("shortest path") {
    const std::vector<std::vector<NodeId>> succ = {{1, 2}, {3}, {3}, {}};
    const std::vector<NodeId> from = {0};
    const auto path = shortest_path(succ, from, 3);
    REQUIRE(path);
    CHECK(*path == std::vector<NodeId>{0, 1, 3});
    CHECK(shortest_path(succ, from, 3, {true, false, true, true}) == std::vector<NodeId>{0, 2, 3});
    CHECK_FALSE(shortest_path(succ, std::vector<NodeId>{3}, 0));
    CHECK(shortest_path(succ, from, 0) == std::vector<NodeId>{0});
  }

  TEST_CASE("seriality and predecessors") {
    StateGraph g;
    g.successors = {{1}, {0, 1}};
    CHECK(g.is_serial());
    const auto pred = g.predecessors();
    CHECK(pred[1] == std::vector<NodeId>{0, 1});
    g.successors.push_back({});
    CHECK_FALSE(g.is_serial());
  }
}
