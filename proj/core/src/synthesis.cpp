#include "normsys/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "normsys/ctl.hpp"
#include "normsys/kripke.hpp"
#include "normsys/validation.hpp"

namespace normsys {

namespace {

using Clock = std::chrono::steady_clock;

constexpr NormStateId kUnset = 0xffffffffu;

void require_valid(const Mas& mas) {
  ValidationReport report = validate_mas(mas);
  if (!report.ok()) throw ValidationError(std::move(report));
}

class BudgetGuard {
 public:
  explicit BudgetGuard(const SynthesisBudget& budget) : budget_(budget), start_(Clock::now()) {}

  /// Accounts for one more candidate; false when the budget is spent.
  bool admit() {
    if (tried_ >= budget_.max_candidates) return false;
    if (budget_.wall_clock && Clock::now() - start_ > *budget_.wall_clock) return false;
    ++tried_;
    return true;
  }
  std::uint64_t tried() const noexcept { return tried_; }

 private:
  const SynthesisBudget& budget_;
  Clock::time_point start_;
  std::uint64_t tried_ = 0;
};

SynthesisOutcome outcome(SynthesisOutcome::Kind kind, std::size_t bound, std::uint64_t tried) {
  SynthesisOutcome out;
  out.kind = kind;
  out.bound = bound;
  out.candidates = tried;
  return out;
}

/// Depth-first construction of dynamic norms with exactly k norm states.
class DynamicSearch {
 public:
  DynamicSearch(const MasPtr& mas, const Formula& f, std::size_t k, BudgetGuard& guard,
                std::vector<std::optional<std::vector<ChoiceOption>>>& options)
      : mas_(*mas), formula_(f), k_(k), guard_(guard), options_(options),
        update_(k * mas->state_count(), kUnset) {}

  enum class Result { Exhausted, Found, OutOfBudget };

  Result run() {
    for (StateId s : mas_.initial()) visit({s, 0});
    initial_count_ = pairs_.size();
    return expand(0);
  }

  const std::optional<NormativeSystem>& found() const noexcept { return found_; }

 private:
  NormativeSystem norm() const {
    std::vector<std::string> names;
    for (std::size_t q = 0; q < used_; ++q) names.push_back("q" + std::to_string(q));
    NormativeSystem n(std::move(names), mas_.state_count());
    n.set_name("synthesized");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const ProductState p = pairs_[i];
      n.set_forbidden(p.state, p.norm, option_list(p.state)[chosen_[i]].forbidden);
    }
    const std::size_t states = mas_.state_count();
    for (NormStateId q = 0; q < used_; ++q) {
      for (StateId s = 0; s < states; ++s) {
        if (NormStateId t = update_[q * states + s]; t != kUnset) n.set_update(q, s, t);
      }
    }
    return n;
  }

  static std::uint64_t key(ProductState p) {
    return (static_cast<std::uint64_t>(p.state) << 32) | p.norm;
  }

  const std::vector<ChoiceOption>& option_list(StateId s) const {
    auto& slot = options_[s];
    if (!slot) slot = choice_options(mas_, s);
    return *slot;
  }

  bool visit(ProductState p) {
    if (!index_.emplace(key(p), static_cast<NodeId>(pairs_.size())).second) return false;
    pairs_.push_back(p);
    chosen_.push_back(0);
    return true;
  }
  void unvisit() {
    index_.erase(key(pairs_.back()));
    pairs_.pop_back();
    chosen_.pop_back();
  }

  Result expand(std::size_t pos) {
    if (pos == pairs_.size()) return complete();
    const auto& opts = option_list(pairs_[pos].state);
    for (std::uint32_t o = 0; o < opts.size(); ++o) {
      chosen_[pos] = o;
      if (Result r = route(pos, opts[o], 0); r != Result::Exhausted) return r;
    }
    return Result::Exhausted;
  }

  Result route(std::size_t pos, const ChoiceOption& option, std::size_t d) {
    if (d == option.targets.size()) return expand(pos + 1);
    const NormStateId q = pairs_[pos].norm;
    const StateId t = option.targets[d];
    NormStateId& slot = update_[q * mas_.state_count() + t];

    auto follow = [&](NormStateId target) {
      const bool added = visit({t, target});
      Result r = route(pos, option, d + 1);
      if (added) unvisit();
      return r;
    };

    if (slot != kUnset) return follow(slot);
    const NormStateId last = used_ < k_ ? static_cast<NormStateId>(used_) : static_cast<NormStateId>(used_ - 1);
    for (NormStateId target = 0; target <= last; ++target) {
      const bool fresh = target == used_;
      if (fresh) ++used_;
      slot = target;
      Result r = follow(target);
      slot = kUnset;
      if (fresh) --used_;
      if (r != Result::Exhausted) return r;
    }
    return Result::Exhausted;
  }

  Result complete() {
    // Norms with fewer states were covered by an earlier bound.
    if (used_ < k_) return Result::Exhausted;
    if (!guard_.admit()) return Result::OutOfBudget;

    StateGraph graph;
    graph.propositions = mas_.propositions();
    graph.successors.resize(pairs_.size());
    graph.labels.resize(pairs_.size());
    const std::size_t states = mas_.state_count();
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const ProductState p = pairs_[i];
      auto& succ = graph.successors[i];
      for (StateId t : option_list(p.state)[chosen_[i]].targets) {
        succ.push_back(index_.at(key({t, update_[p.norm * states + t]})));
      }
      std::sort(succ.begin(), succ.end());
      auto labels = mas_.labels(p.state);
      graph.labels[i].assign(labels.begin(), labels.end());
    }
    for (NodeId i = 0; i < initial_count_; ++i) graph.initial.push_back(i);
    if (!ctl::check(graph, formula_)) return Result::Exhausted;
    found_ = norm();
    return Result::Found;
  }

  const Mas& mas_;
  const Formula& formula_;
  std::size_t k_;
  BudgetGuard& guard_;
  std::vector<std::optional<std::vector<ChoiceOption>>>& options_;

  std::vector<ProductState> pairs_;
  std::vector<std::uint32_t> chosen_;
  std::unordered_map<std::uint64_t, NodeId> index_;
  std::vector<NormStateId> update_;  // [q * |S| + s]
  std::size_t used_ = 1;
  std::size_t initial_count_ = 0;
  std::optional<NormativeSystem> found_;
};

}  // namespace

const char* to_string(SynthesisOutcome::Kind kind) {
  switch (kind) {
    case SynthesisOutcome::Kind::Found: return "Found";
    case SynthesisOutcome::Kind::NoneExists: return "NoneExists";
    case SynthesisOutcome::Kind::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

bool verify(const MasPtr& mas, const NormativeSystem& norm, const Formula& f) {
  return ctl::check(apply_norm(mas, norm), f);
}

std::vector<ChoiceOption> choice_options(const Mas& mas, StateId state) {
  const std::size_t joints = mas.joint_count(state);
  std::vector<std::vector<StateId>> reach(joints);
  for (const auto& t : mas.transitions_from(state)) {
    if (t.joint_index != kNoJointIndex) reach[t.joint_index].push_back(t.target);
  }
  for (auto& r : reach) r.erase(std::unique(r.begin(), r.end()), r.end());

  std::set<std::vector<StateId>> distinct(reach.begin(), reach.end());
  std::set<std::vector<StateId>> unions;
  for (const auto& d : distinct) {
    std::vector<std::vector<StateId>> grown;
    for (const auto& u : unions) {
      std::vector<StateId> merged;
      std::set_union(u.begin(), u.end(), d.begin(), d.end(), std::back_inserter(merged));
      grown.push_back(std::move(merged));
    }
    unions.insert(d);
    unions.insert(grown.begin(), grown.end());
  }

  std::vector<ChoiceOption> options;
  for (const auto& u : unions) {
    ChoiceOption option{u, {}};
    for (std::uint32_t j = 0; j < joints; ++j) {
      if (!std::includes(u.begin(), u.end(), reach[j].begin(), reach[j].end())) {
        option.forbidden.push_back(j);
      }
    }
    options.push_back(std::move(option));
  }
  std::stable_sort(options.begin(), options.end(), [](const ChoiceOption& a, const ChoiceOption& b) {
    return a.targets.size() > b.targets.size();
  });
  return options;
}

std::vector<StateId> reachable_states(const Mas& mas) {
  std::vector<bool> seen(mas.state_count(), false);
  std::deque<StateId> queue;
  for (StateId s : mas.initial()) {
    if (!seen[s]) queue.push_back(s);
    seen[s] = true;
  }
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const auto& t : mas.transitions_from(s)) {
      if (!seen[t.target]) {
        seen[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }
  std::vector<StateId> result;
  for (StateId s = 0; s < mas.state_count(); ++s) {
    if (seen[s]) result.push_back(s);
  }
  return result;
}

SynthesisOutcome synthesize_static(const MasPtr& mas, const Formula& f, const SynthesisBudget& budget) {
  require_valid(*mas);
  std::vector<StateId> choice_states;
  std::vector<std::vector<ChoiceOption>> options;
  for (StateId s : reachable_states(*mas)) {
    auto opts = choice_options(*mas, s);
    if (opts.size() < 2) continue;
    choice_states.push_back(s);
    options.push_back(std::move(opts));
  }

  BudgetGuard guard(budget);
  std::vector<std::size_t> digit(choice_states.size(), 0);
  while (true) {
    if (!guard.admit()) return outcome(SynthesisOutcome::Kind::BudgetExceeded, 1, guard.tried());
    auto candidate = std::make_shared<NormativeSystem>(NormativeSystem::identity(*mas));
    candidate->set_name("synthesized");
    for (std::size_t i = 0; i < choice_states.size(); ++i) {
      candidate->set_forbidden(choice_states[i], 0, options[i][digit[i]].forbidden);
    }
    if (ctl::check(KripkeStructure(mas, candidate), f)) {
      SynthesisOutcome out = outcome(SynthesisOutcome::Kind::Found, 1, guard.tried());
      out.norm = std::move(*candidate);
      return out;
    }
    // Odometer with the last choice state varying fastest.
    std::size_t i = digit.size();
    while (i > 0 && ++digit[i - 1] == options[i - 1].size()) digit[--i] = 0;
    if (i == 0) return outcome(SynthesisOutcome::Kind::NoneExists, 1, guard.tried());
  }
}

SynthesisOutcome synthesize_dynamic(const MasPtr& mas, const Formula& f, std::size_t k_max,
                                    const SynthesisBudget& budget) {
  require_valid(*mas);
  if (k_max == 0) throw Error("the normative-state bound must be positive");
  BudgetGuard guard(budget);
  std::vector<std::optional<std::vector<ChoiceOption>>> options(mas->state_count());
  for (std::size_t k = 1; k <= k_max; ++k) {
    DynamicSearch search(mas, f, k, guard, options);
    switch (search.run()) {
      case DynamicSearch::Result::Found: {
        SynthesisOutcome out = outcome(SynthesisOutcome::Kind::Found, k, guard.tried());
        out.norm = search.found();
        return out;
      }
      case DynamicSearch::Result::OutOfBudget:
        return outcome(SynthesisOutcome::Kind::BudgetExceeded, k, guard.tried());
      case DynamicSearch::Result::Exhausted: break;
    }
  }
  return outcome(SynthesisOutcome::Kind::NoneExists, k_max, guard.tried());
}

}  // namespace normsys
