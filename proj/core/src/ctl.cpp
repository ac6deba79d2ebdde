#include "normsys/ctl.hpp"

#include <algorithm>
#include <deque>

#include "normsys/error.hpp"

namespace normsys::ctl {

namespace {

using K = FormulaKind;

StateSet atom_set(const StateGraph& g, const std::string& name) {
  StateSet out(g.size(), false);
  auto prop = g.find_prop(name);
  if (!prop) return out;
  for (NodeId v = 0; v < g.size(); ++v) {
    const auto& labels = g.labels[v];
    out[v] = std::find(labels.begin(), labels.end(), *prop) != labels.end();
  }
  return out;
}

StateSet complement(StateSet s) {
  s.flip();
  return s;
}

class Labeler {
 public:
  explicit Labeler(const StateGraph& g) : g_(g), pred_(g.predecessors()) {}

  StateSet eval(const Formula& f) {
    const std::size_t n = g_.size();
    switch (f.kind()) {
      case K::True: return StateSet(n, true);
      case K::Atom: return atom_set(g_, f.name());
      case K::Not: return complement(eval(f.left()));
      case K::Or: {
        StateSet a = eval(f.left());
        StateSet b = eval(f.right());
        for (std::size_t v = 0; v < n; ++v) a[v] = a[v] || b[v];
        return a;
      }
      case K::EX: {
        StateSet target = eval(f.left());
        StateSet out(n, false);
        for (NodeId w = 0; w < n; ++w) {
          if (!target[w]) continue;
          for (NodeId v : pred_[w]) out[v] = true;
        }
        return out;
      }
      case K::EU: return exists_until(eval(f.left()), eval(f.right()));
      case K::EG: return exists_globally(eval(f.left()));
      default:
        throw Error("formula is not in core form: " + f.to_string());
    }
  }

 private:
  StateSet exists_until(const StateSet& hold, const StateSet& goal) {
    StateSet out = goal;
    std::deque<NodeId> queue;
    for (NodeId v = 0; v < g_.size(); ++v) {
      if (out[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
      NodeId w = queue.front();
      queue.pop_front();
      for (NodeId v : pred_[w]) {
        if (!out[v] && hold[v]) {
          out[v] = true;
          queue.push_back(v);
        }
      }
    }
    return out;
  }

  StateSet exists_globally(const StateSet& hold) {
    const std::size_t n = g_.size();
    SccDecomposition scc = tarjan_scc(g_.successors, hold);
    StateSet out(n, false);
    std::deque<NodeId> queue;
    for (std::size_t c = 0; c < scc.members.size(); ++c) {
      if (!scc.nontrivial[c]) continue;
      for (NodeId v : scc.members[c]) {
        out[v] = true;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      NodeId w = queue.front();
      queue.pop_front();
      for (NodeId v : pred_[w]) {
        if (!out[v] && hold[v]) {
          out[v] = true;
          queue.push_back(v);
        }
      }
    }
    return out;
  }

  const StateGraph& g_;
  std::vector<std::vector<NodeId>> pred_;
};

// Straight from the semantic clauses, one operator at a time, no
// normalization and no graph algorithms beyond successor scans.
class NaiveEvaluator {
 public:
  explicit NaiveEvaluator(const StateGraph& g) : g_(g) {}

  StateSet eval(const Formula& f) {
    const std::size_t n = g_.size();
    switch (f.kind()) {
      case K::True: return StateSet(n, true);
      case K::False: return StateSet(n, false);
      case K::Atom: return atom_set(g_, f.name());
      case K::Not: return complement(eval(f.left()));
      case K::And: return combine(eval(f.left()), eval(f.right()), [](bool a, bool b) { return a && b; });
      case K::Or: return combine(eval(f.left()), eval(f.right()), [](bool a, bool b) { return a || b; });
      case K::Implies:
        return combine(eval(f.left()), eval(f.right()), [](bool a, bool b) { return !a || b; });
      case K::EX: return some_successor(eval(f.left()));
      case K::AX: return all_successors(eval(f.left()));
      case K::EF: {
        StateSet a = eval(f.left());
        return least([&](const StateSet& z) {
          StateSet pre = some_successor(z);
          return combine(a, pre, [](bool x, bool y) { return x || y; });
        });
      }
      case K::AF: {
        StateSet a = eval(f.left());
        return least([&](const StateSet& z) {
          StateSet pre = all_successors(z);
          return combine(a, pre, [](bool x, bool y) { return x || y; });
        });
      }
      case K::EG: {
        StateSet a = eval(f.left());
        return greatest([&](const StateSet& z) {
          StateSet pre = some_successor(z);
          return combine(a, pre, [](bool x, bool y) { return x && y; });
        });
      }
      case K::AG: {
        StateSet a = eval(f.left());
        return greatest([&](const StateSet& z) {
          StateSet pre = all_successors(z);
          return combine(a, pre, [](bool x, bool y) { return x && y; });
        });
      }
      case K::EU: {
        StateSet a = eval(f.left());
        StateSet b = eval(f.right());
        return least([&](const StateSet& z) {
          StateSet pre = some_successor(z);
          StateSet out(n);
          for (std::size_t v = 0; v < n; ++v) out[v] = b[v] || (a[v] && pre[v]);
          return out;
        });
      }
      case K::AU: {
        StateSet a = eval(f.left());
        StateSet b = eval(f.right());
        return least([&](const StateSet& z) {
          StateSet pre = all_successors(z);
          StateSet out(n);
          for (std::size_t v = 0; v < n; ++v) out[v] = b[v] || (a[v] && pre[v]);
          return out;
        });
      }
    }
    throw Error("unknown formula kind");
  }

 private:
  template <typename Op>
  static StateSet combine(const StateSet& a, const StateSet& b, Op op) {
    StateSet out(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) out[v] = op(a[v], b[v]);
    return out;
  }

  StateSet some_successor(const StateSet& z) const {
    StateSet out(g_.size(), false);
    for (NodeId v = 0; v < g_.size(); ++v) {
      for (NodeId w : g_.successors[v]) out[v] = out[v] || z[w];
    }
    return out;
  }

  // Vacuously true on deadlocks, matching !EX !z.
  StateSet all_successors(const StateSet& z) const {
    StateSet out(g_.size(), true);
    for (NodeId v = 0; v < g_.size(); ++v) {
      for (NodeId w : g_.successors[v]) out[v] = out[v] && z[w];
    }
    return out;
  }

  template <typename Step>
  StateSet least(Step step) const {
    StateSet z(g_.size(), false);
    for (;;) {
      StateSet next = step(z);
      if (next == z) return z;
      z = std::move(next);
    }
  }

  template <typename Step>
  StateSet greatest(Step step) const {
    StateSet z(g_.size(), true);
    for (;;) {
      StateSet next = step(z);
      if (next == z) return z;
      z = std::move(next);
    }
  }

  const StateGraph& g_;
};

std::vector<ProductState> collect(const ReachableProduct& product, const StateSet& set) {
  std::vector<ProductState> out;
  for (NodeId v = 0; v < product.size(); ++v) {
    if (set[v]) out.push_back(product.states[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

StateSet sat_set(const StateGraph& graph, const Formula& f) {
  return Labeler(graph).eval(normalize(f));
}

StateSet naive_sat_set(const StateGraph& graph, const Formula& f) {
  return NaiveEvaluator(graph).eval(f);
}

bool check(const StateGraph& graph, const Formula& f) {
  StateSet sat = sat_set(graph, f);
  return std::all_of(graph.initial.begin(), graph.initial.end(), [&](NodeId v) { return sat[v]; });
}

std::vector<ProductState> sat_set(const ReachableProduct& product, const Formula& f) {
  return collect(product, sat_set(product.graph, f));
}

std::vector<ProductState> sat_set(const KripkeStructure& k, const Formula& f) {
  return sat_set(reachable(k), f);
}

std::vector<ProductState> naive_sat_set(const KripkeStructure& k, const Formula& f) {
  ReachableProduct product = reachable(k);
  return collect(product, naive_sat_set(product.graph, f));
}

bool check(const ReachableProduct& product, const Formula& f) { return check(product.graph, f); }

bool check(const KripkeStructure& k, const Formula& f) { return check(reachable(k), f); }

}  // namespace normsys::ctl
