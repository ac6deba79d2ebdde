#pragma once

#include <vector>

#include "normsys/formula.hpp"
#include "normsys/graph.hpp"
#include "normsys/kripke.hpp"

namespace normsys::ctl {

/// Characteristic vector over the nodes of a StateGraph.
using StateSet = std::vector<bool>;

/// { v | G, v |= f } by bottom-up labeling of the normalized formula: EX by
/// predecessor image, EU as a least fixpoint by backward search, EG via the
/// nontrivial SCCs of the f-restricted subgraph. Atoms that label no node
/// are false everywhere.
StateSet sat_set(const StateGraph& graph, const Formula& f);

/// Same contract as sat_set, computed straight from the semantic clauses of
/// every operator (derived ones included) by chaotic fixpoint iteration.
/// Deliberately slow; exists to cross-check sat_set.
StateSet naive_sat_set(const StateGraph& graph, const Formula& f);

/// Every initial node satisfies f.
bool check(const StateGraph& graph, const Formula& f);

/// Satisfying reachable product states, sorted.
std::vector<ProductState> sat_set(const ReachableProduct& product, const Formula& f);
std::vector<ProductState> sat_set(const KripkeStructure& k, const Formula& f);
std::vector<ProductState> naive_sat_set(const KripkeStructure& k, const Formula& f);

/// K |= f: every state of I x {q0} satisfies f.
bool check(const ReachableProduct& product, const Formula& f);
bool check(const KripkeStructure& k, const Formula& f);

}  // namespace normsys::ctl
