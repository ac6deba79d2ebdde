#include "testgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "normsys/ctl.hpp"
#include "normsys/kripke.hpp"

namespace normsys::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Nonempty random subset of 0..n-1, sorted.
std::vector<std::uint32_t> nonempty_subset(Rng& rng, std::size_t n) {
  std::vector<std::uint32_t> out;
  while (out.empty()) {
    for (std::uint32_t i = 0; i < n; ++i) {
      if (coin(rng)) out.push_back(i);
    }
  }
  return out;
}

}  // namespace

MasPtr random_mas(Rng& rng, const MasShape& shape) {
  MasBuilder b;
  const std::size_t n = uniform(rng, shape.min_states, shape.max_states);
  const std::size_t agents = uniform(rng, 1, shape.max_agents);
  std::vector<std::size_t> actions(agents);
  for (std::size_t i = 0; i < agents; ++i) {
    const AgentId a = b.add_agent("ag" + std::to_string(i));
    actions[i] = uniform(rng, 1, shape.max_actions);
    for (std::size_t k = 0; k < actions[i]; ++k) b.add_action(a, "act" + std::to_string(k));
  }
  for (std::size_t s = 0; s < n; ++s) b.add_state("s" + std::to_string(s));
  for (const auto& p : shape.props) b.add_prop(p);

  std::vector<std::vector<std::vector<ActionId>>> avail(n, std::vector<std::vector<ActionId>>(agents));
  for (StateId s = 0; s < n; ++s) {
    for (AgentId a = 0; a < agents; ++a) {
      avail[s][a] = nonempty_subset(rng, actions[a]);
      b.set_available(a, s, avail[s][a]);
    }
    // Every joint action, enumerated in mixed radix.
    std::vector<std::size_t> digit(agents, 0);
    for (;;) {
      JointAction ja;
      for (AgentId a = 0; a < agents; ++a) ja.local.push_back(avail[s][a][digit[a]]);
      const std::size_t targets = uniform(rng, 1, shape.max_targets);
      for (std::size_t t = 0; t < targets; ++t) {
        b.add_transition(s, ja, static_cast<StateId>(uniform(rng, 0, n - 1)));
      }
      std::size_t a = agents;
      while (a > 0 && ++digit[a - 1] == avail[s][a - 1].size()) digit[--a] = 0;
      if (a == 0) break;
    }
    for (PropId p = 0; p < shape.props.size(); ++p) {
      if (coin(rng)) b.add_label(s, p);
    }
  }
  b.add_initial(0);
  if (n > 1 && coin(rng, 0.3)) b.add_initial(static_cast<StateId>(uniform(rng, 1, n - 1)));
  return b.build();
}

StateGraph random_graph(Rng& rng, std::size_t max_nodes, const std::vector<std::string>& props) {
  StateGraph g;
  const std::size_t n = uniform(rng, 1, max_nodes);
  g.propositions = props;
  g.successors.resize(n);
  g.labels.resize(n);
  const double density = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t out = 1 + std::poisson_distribution<std::size_t>(density)(rng);
    for (std::size_t k = 0; k < out; ++k) g.successors[v].push_back(static_cast<NodeId>(uniform(rng, 0, n - 1)));
    std::sort(g.successors[v].begin(), g.successors[v].end());
    g.successors[v].erase(std::unique(g.successors[v].begin(), g.successors[v].end()), g.successors[v].end());
    for (PropId p = 0; p < props.size(); ++p) {
      if (coin(rng, 0.4)) g.labels[v].push_back(p);
    }
  }
  g.initial = {0};
  return g;
}

Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms) {
  if (depth == 0 || coin(rng, 0.2)) {
    const std::size_t pick = uniform(rng, 0, atoms.size() + 1);
    if (pick == atoms.size()) return Formula::truth();
    if (pick == atoms.size() + 1) return Formula::falsity();
    return Formula::atom(atoms[pick]);
  }
  static constexpr FormulaKind kUnary[] = {FormulaKind::EX, FormulaKind::AX, FormulaKind::EF,
                                           FormulaKind::AF, FormulaKind::EG, FormulaKind::AG};
  auto sub = [&] { return random_formula(rng, depth - 1, atoms); };
  switch (uniform(rng, 0, 6)) {
    case 0:
      return Formula::negation(sub());
    case 1:
      return Formula::conjunction(sub(), sub());
    case 2:
      return Formula::disjunction(sub(), sub());
    case 3:
      return Formula::implication(sub(), sub());
    case 4:
      return Formula::until(coin(rng) ? FormulaKind::EU : FormulaKind::AU, sub(), sub());
    default:
      return Formula::unary(kUnary[uniform(rng, 0, 5)], sub());
  }
}

NormativeSystem random_norm(Rng& rng, const Mas& mas, std::size_t norm_states, bool keep_one) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < norm_states; ++q) names.push_back("q" + std::to_string(q));
  NormativeSystem norm(names, mas.state_count());
  for (StateId s = 0; s < mas.state_count(); ++s) {
    const std::size_t joint = mas.joint_count(s);
    for (NormStateId q = 0; q < norm_states; ++q) {
      if (joint > 1 && (keep_one || coin(rng))) {
        // Keep at least one joint action.
        std::vector<std::uint32_t> all(joint);
        std::iota(all.begin(), all.end(), 0u);
        std::shuffle(all.begin(), all.end(), rng);
        const std::size_t count = keep_one ? joint - 1 : uniform(rng, 1, joint - 1);
        std::vector<std::uint32_t> forbidden(all.begin(), all.begin() + count);
        std::sort(forbidden.begin(), forbidden.end());
        norm.set_forbidden(s, q, forbidden);
      }
      norm.set_update(q, s, static_cast<NormStateId>(uniform(rng, 0, norm_states - 1)));
    }
  }
  return norm;
}

NormFamily random_family(Rng& rng, const FamilyShape& shape) {
  MasPtr mas = random_mas(rng, shape.mas);
  const std::size_t count = uniform(rng, 2, shape.max_members);
  std::vector<NormativeSystem> members;
  for (std::size_t i = 0; i < count; ++i) {
    members.push_back(random_norm(rng, *mas, uniform(rng, 1, shape.max_norm_states), shape.deterministic));
    members.back().set_name("M" + std::to_string(i));
  }
  std::vector<std::string> obs;
  for (StateId s = 0; s < mas->state_count(); ++s) {
    obs.push_back("o" + std::to_string(uniform(rng, 0, shape.observation_alphabet - 1)));
  }
  const std::size_t active = uniform(rng, 0, count - 1);
  return NormFamily::make(mas, std::move(members), active, std::move(obs));
}

Nfa random_nfa(Rng& rng, std::size_t max_states) {
  const std::size_t n = uniform(rng, 1, max_states);
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  Nfa nfa = Nfa::make(names, {"a", "b"});
  for (std::uint32_t q = 0; q < n; ++q) {
    nfa.final[q] = coin(rng);
    for (std::uint32_t a = 0; a < 2; ++a) {
      for (std::uint32_t t = 0; t < n; ++t) {
        if (coin(rng, 0.4)) nfa.add_transition(q, a, t);
      }
    }
  }
  return nfa;
}

std::vector<Nfa> all_nfas(std::size_t states) {
  // delta is a vector of 2 * states successor masks; a renaming of states
  // 1..n-1 permutes both the (state, symbol) slots and the mask bits.
  const std::size_t slots = 2 * states;
  const std::uint32_t masks = 1u << states;
  std::vector<std::uint32_t> perm(states);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<std::uint32_t>> renamings;
  do {
    renamings.push_back(perm);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));

  auto encode = [&](const std::vector<std::uint32_t>& delta) {
    std::uint64_t code = 0;
    for (auto m : delta) code = code * masks + m;
    return code;
  };

  std::vector<std::string> names;
  for (std::size_t q = 0; q < states; ++q) names.push_back("q" + std::to_string(q));
  std::vector<Nfa> out;
  std::vector<std::uint32_t> delta(slots, 0);
  std::vector<std::uint32_t> renamed(slots);
  for (;;) {
    const std::uint64_t code = encode(delta);
    bool canonical = true;
    for (const auto& r : renamings) {
      for (std::size_t q = 0; q < states; ++q) {
        for (std::size_t a = 0; a < 2; ++a) {
          std::uint32_t m = 0;
          for (std::size_t t = 0; t < states; ++t) {
            if (delta[2 * q + a] >> t & 1u) m |= 1u << r[t];
          }
          renamed[2 * r[q] + a] = m;
        }
      }
      if (encode(renamed) < code) {
        canonical = false;
        break;
      }
    }
    if (canonical) {
      Nfa nfa = Nfa::make(names, {"a", "b"});
      for (std::uint32_t q = 0; q < states; ++q) {
        for (std::uint32_t a = 0; a < 2; ++a) {
          for (std::uint32_t t = 0; t < states; ++t) {
            if (delta[2 * q + a] >> t & 1u) nfa.add_transition(q, a, t);
          }
        }
      }
      out.push_back(std::move(nfa));
    }
    std::size_t i = slots;
    while (i > 0 && ++delta[i - 1] == masks) delta[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

bool holds_naive(const MasPtr& mas, const NormativeSystem& norm, const Formula& f) {
  const KripkeStructure k(mas, std::make_shared<const NormativeSystem>(norm));
  const auto sat = ctl::naive_sat_set(k, f);
  for (const auto& p : k.initial_states()) {
    if (!std::binary_search(sat.begin(), sat.end(), p)) return false;
  }
  return true;
}

namespace {

/// Strict subsets of 0..joint-1 as bit masks; the full set is excluded.
std::vector<std::uint32_t> forbid_masks(std::size_t joint) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m + 1 < (1u << joint); ++m) masks.push_back(m);
  return masks;
}

std::vector<std::uint32_t> bits(std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace

bool brute_static_exists(const MasPtr& mas, const Formula& f) {
  return brute_dynamic_exists(mas, f, 1);
}

double brute_dynamic_space(const Mas& mas, std::size_t k) {
  double space = std::pow(static_cast<double>(k), static_cast<double>(k * mas.state_count()));
  for (StateId s = 0; s < mas.state_count(); ++s) {
    space *= std::pow(std::ldexp(1.0, static_cast<int>(mas.joint_count(s))) - 1.0, static_cast<double>(k));
  }
  return space;
}

bool brute_dynamic_exists(const MasPtr& mas, const Formula& f, std::size_t k) {
  const std::size_t n = mas->state_count();
  std::vector<std::string> names;
  for (std::size_t q = 0; q < k; ++q) names.push_back("q" + std::to_string(q));
  NormativeSystem norm(names, n);

  // Slots 0..n*k-1 choose restrictions, the next n*k choose update targets.
  const std::size_t pairs = n * k;
  std::vector<std::vector<std::uint32_t>> options(pairs);
  for (StateId s = 0; s < n; ++s) {
    for (NormStateId q = 0; q < k; ++q) options[s * k + q] = forbid_masks(mas->joint_count(s));
  }
  std::function<bool(std::size_t)> assign = [&](std::size_t slot) -> bool {
    if (slot == 2 * pairs) return holds_naive(mas, norm, f);
    if (slot < pairs) {
      const auto s = static_cast<StateId>(slot / k);
      const auto q = static_cast<NormStateId>(slot % k);
      for (auto m : options[slot]) {
        norm.set_forbidden(s, q, bits(m));
        if (assign(slot + 1)) return true;
      }
      return false;
    }
    const std::size_t u = slot - pairs;
    const auto q = static_cast<NormStateId>(u / n);
    const auto s = static_cast<StateId>(u % n);
    for (NormStateId t = 0; t < k; ++t) {
      norm.set_update(q, s, t);
      if (assign(slot + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

}  // namespace normsys::testing
