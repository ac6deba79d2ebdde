#include <algorithm>
#include <sstream>

#include "line_reader.hpp"
#include "normsys/dsl.hpp"

namespace normsys::dsl {

using detail::expect_arity;
using detail::fail;
using detail::Line;
using detail::quote;

Nfa parse_nfa(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  auto declare = [](std::vector<std::string>& names, const std::string& name) {
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  };
  const detail::Token* initial = nullptr;
  bool alphabet_declared = false;
  static const std::string kHeaders[] = {"states", "alphabet", "initial", "final"};
  auto is_header = [](const std::string& kw) {
    return std::find(std::begin(kHeaders), std::end(kHeaders), kw) != std::end(kHeaders);
  };

  for (const Line& line : lines) {
    const std::string& kw = line[0].text;
    if (kw == "states") {
      expect_arity(line, 2);
      for (std::size_t i = 1; i < line.size(); ++i) declare(states, line[i].text);
    } else if (kw == "alphabet") {
      expect_arity(line, 2);
      alphabet_declared = true;
      for (std::size_t i = 1; i < line.size(); ++i) declare(alphabet, line[i].text);
    } else if (kw == "initial") {
      expect_arity(line, 2, 2);
      if (initial) fail(line[0], "initial state declared twice");
      initial = &line[1];
      declare(states, line[1].text);
    } else if (kw == "final") {
      for (std::size_t i = 1; i < line.size(); ++i) declare(states, line[i].text);
    } else if (line.size() != 3) {
      fail(line[0], "expected a transition 'state symbol state'");
    }
  }
  if (!initial) throw ParseError("missing initial state", 1, 1);
  if (!alphabet_declared) {
    // Without an alphabet line the symbols are those the transitions use.
    for (const Line& line : lines) {
      if (!is_header(line[0].text)) declare(alphabet, line[1].text);
    }
  }

  const auto initial_id = static_cast<std::uint32_t>(
      std::find(states.begin(), states.end(), initial->text) - states.begin());
  Nfa nfa = Nfa::make(states, alphabet, initial_id);
  for (const Line& line : lines) {
    const std::string& kw = line[0].text;
    if (kw == "final") {
      for (std::size_t i = 1; i < line.size(); ++i) nfa.final[*nfa.find_state(line[i].text)] = true;
    } else if (!is_header(kw)) {
      auto from = nfa.find_state(line[0].text);
      if (!from) fail(line[0], "unknown state '" + line[0].text + "'");
      auto symbol = nfa.find_symbol(line[1].text);
      if (!symbol) fail(line[1], "unknown symbol '" + line[1].text + "'");
      auto to = nfa.find_state(line[2].text);
      if (!to) fail(line[2], "unknown state '" + line[2].text + "'");
      nfa.add_transition(*from, *symbol, *to);
    }
  }
  return nfa;
}

std::string serialize_nfa(const Nfa& nfa) {
  std::ostringstream out;
  out << "states";
  for (const auto& q : nfa.states) out << ' ' << quote(q);
  out << "\nalphabet";
  for (const auto& a : nfa.alphabet) out << ' ' << quote(a);
  out << "\ninitial " << quote(nfa.states[nfa.initial]) << "\nfinal";
  for (std::size_t q = 0; q < nfa.state_count(); ++q) {
    if (nfa.final[q]) out << ' ' << quote(nfa.states[q]);
  }
  out << '\n';
  for (std::size_t q = 0; q < nfa.state_count(); ++q) {
    for (std::size_t a = 0; a < nfa.symbol_count(); ++a) {
      for (std::uint32_t t : nfa.delta[q][a]) {
        out << quote(nfa.states[q]) << ' ' << quote(nfa.alphabet[a]) << ' ' << quote(nfa.states[t]) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace normsys::dsl
