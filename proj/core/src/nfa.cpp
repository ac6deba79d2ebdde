#include "normsys/nfa.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "normsys/error.hpp"

namespace normsys {

Nfa Nfa::make(std::vector<std::string> states, std::vector<std::string> alphabet,
              std::uint32_t initial) {
  Nfa nfa;
  nfa.states = std::move(states);
  nfa.alphabet = std::move(alphabet);
  if (nfa.states.empty()) throw Error("an automaton needs at least one state");
  if (initial >= nfa.states.size()) throw Error("initial automaton state out of range");
  nfa.initial = initial;
  nfa.final.assign(nfa.states.size(), false);
  nfa.delta.assign(nfa.states.size(), std::vector<std::vector<std::uint32_t>>(nfa.alphabet.size()));
  return nfa;
}

std::optional<std::uint32_t> Nfa::find_state(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - states.begin());
}

std::optional<std::uint32_t> Nfa::find_symbol(std::string_view name) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - alphabet.begin());
}

void Nfa::add_transition(std::uint32_t from, std::uint32_t symbol, std::uint32_t to) {
  if (from >= states.size() || to >= states.size() || symbol >= alphabet.size()) {
    throw Error("automaton transition out of range");
  }
  auto& targets = delta[from][symbol];
  auto it = std::lower_bound(targets.begin(), targets.end(), to);
  if (it == targets.end() || *it != to) targets.insert(it, to);
}

namespace {

using Subset = std::vector<std::uint32_t>;

template <typename Reject>
bool subsets_avoid(const Nfa& nfa, Reject reject) {
  std::set<Subset> seen;
  std::deque<Subset> queue;
  Subset start{nfa.initial};
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Subset current = std::move(queue.front());
    queue.pop_front();
    if (reject(current)) return false;
    for (std::uint32_t a = 0; a < nfa.symbol_count(); ++a) {
      Subset next;
      for (std::uint32_t q : current) {
        const auto& targets = nfa.delta[q][a];
        next.insert(next.end(), targets.begin(), targets.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return true;
}

}  // namespace

bool nfa_run_universal(const Nfa& nfa) {
  return subsets_avoid(nfa, [](const Subset& s) { return s.empty(); });
}

bool nfa_language_universal(const Nfa& nfa) {
  return subsets_avoid(nfa, [&](const Subset& s) {
    return std::none_of(s.begin(), s.end(), [&](std::uint32_t q) { return nfa.final[q]; });
  });
}

}  // namespace normsys
