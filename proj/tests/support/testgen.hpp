#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "normsys/formula.hpp"
#include "normsys/graph.hpp"
#include "normsys/mas.hpp"
#include "normsys/nfa.hpp"
#include "normsys/norm.hpp"
#include "normsys/recognition.hpp"

namespace normsys::testing {

using Rng = std::mt19937_64;

struct MasShape {
  std::size_t min_states = 2;
  std::size_t max_states = 4;
  std::size_t max_agents = 2;
  /// Actions per agent; each state makes a nonempty subset available.
  std::size_t max_actions = 2;
  /// Targets per (state, joint action).
  std::size_t max_targets = 2;
  std::vector<std::string> props = {"p", "q"};
};

/// Serial, fully observable system; every joint action has a successor.
MasPtr random_mas(Rng& rng, const MasShape& shape = {});

/// Serial graph with one initial node and random labels over `props`.
StateGraph random_graph(Rng& rng, std::size_t max_nodes, const std::vector<std::string>& props);

/// Random formula over every operator, nesting depth at most `depth`.
Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms);

/// Valid norm with `norm_states` states: random strict-subset restrictions
/// (exactly one surviving joint action everywhere when `keep_one`) and
/// random updates.
NormativeSystem random_norm(Rng& rng, const Mas& mas, std::size_t norm_states, bool keep_one = false);

struct FamilyShape {
  MasShape mas{2, 4, 1, 2, 2, {}};
  std::size_t max_members = 3;
  std::size_t max_norm_states = 2;
  std::size_t observation_alphabet = 2;
  /// Members leave a single joint action at every pair.
  bool deterministic = false;
};

NormFamily random_family(Rng& rng, const FamilyShape& shape = {});

/// Random automaton over {a, b}; each (state, symbol) gets a random subset.
Nfa random_nfa(Rng& rng, std::size_t max_states);

/// Every transition function over {a, b} with `states` states and initial
/// state 0, one representative per renaming of the non-initial states.
std::vector<Nfa> all_nfas(std::size_t states);

/// K |= f, evaluated with the definitional checker.
bool holds_naive(const MasPtr& mas, const NormativeSystem& norm, const Formula& f);

/// Some static norm makes f hold; every strict subset of the available joint
/// actions at every state is tried, no pruning.
bool brute_static_exists(const MasPtr& mas, const Formula& f);

/// Some norm with exactly k normative states makes f hold; every
/// restriction at every (state, norm state) and every update function is
/// tried, no pruning.
bool brute_dynamic_exists(const MasPtr& mas, const Formula& f, std::size_t k);

/// Number of norms brute_dynamic_exists would try.
double brute_dynamic_space(const Mas& mas, std::size_t k);

}  // namespace normsys::testing
