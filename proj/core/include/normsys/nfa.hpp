#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace normsys {

/// Nondeterministic finite automaton (Q, q0, delta, F) over a finite
/// alphabet. States and symbols are dense ids with names kept for I/O.
struct Nfa {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::uint32_t initial = 0;
  std::vector<bool> final;
  /// delta[q][a]: sorted successor states.
  std::vector<std::vector<std::vector<std::uint32_t>>> delta;

  /// Empty automaton shell with the given names; no transitions.
  static Nfa make(std::vector<std::string> states, std::vector<std::string> alphabet,
                  std::uint32_t initial = 0);

  std::size_t state_count() const noexcept { return states.size(); }
  std::size_t symbol_count() const noexcept { return alphabet.size(); }
  std::optional<std::uint32_t> find_state(std::string_view name) const;
  std::optional<std::uint32_t> find_symbol(std::string_view name) const;
  void add_transition(std::uint32_t from, std::uint32_t symbol, std::uint32_t to);

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

/// Every finite word over the alphabet admits at least one run (acceptance
/// ignored): the empty subset is unreachable in the subset construction.
bool nfa_run_universal(const Nfa& nfa);

/// Language universality proper: every word has an accepting run.
bool nfa_language_universal(const Nfa& nfa);

}  // namespace normsys
