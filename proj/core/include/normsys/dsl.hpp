#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normsys/formula.hpp"
#include "normsys/mas.hpp"
#include "normsys/nfa.hpp"
#include "normsys/norm.hpp"

/// Line-oriented text formats. Every format treats '#' at the start of a
/// token as a comment running to the end of the line, accepts any newline
/// convention, and reports errors as ParseError with a 1-based position.
/// The grammar is documented in docs/formats.md.
namespace normsys::dsl {

/// .mas document. Throws ParseError on syntax or unknown identifiers and
/// ValidationError when the system violates a well-formedness invariant.
MasPtr parse_model(std::string_view text);
/// As parse_model, without running validate_mas.
MasPtr parse_model_unchecked(std::string_view text);
std::string serialize_model(const Mas& mas);

/// .norm document resolved against `mas`. Unlisted updates self-loop; a
/// document with no norm-states line has the single norm state q0.
NormativeSystem parse_norm(std::string_view text, const Mas& mas);
NormativeSystem parse_norm_unchecked(std::string_view text, const Mas& mas);
std::string serialize_norm(const Mas& mas, const NormativeSystem& norm);

/// .ctl document: a single formula. Precedence, tightest first: unary and
/// temporal operators, &, |, -> (right associative).
Formula parse_formula(std::string_view text);
std::string serialize_formula(const Formula& f);

/// .nfa document.
Nfa parse_nfa(std::string_view text);
std::string serialize_nfa(const Nfa& nfa);

/// .family document: the candidate norms of a recognition problem and the
/// new agent's observation function. Paths are kept as written.
struct FamilyDocument {
  std::optional<std::string> model;
  std::vector<std::string> norms;
  std::size_t active = 0;
  /// Take the new agent's observations from this agent of the model.
  std::optional<std::string> observer;
  /// Explicit (state, observation) entries; override `observer` per state.
  std::vector<std::pair<std::string, std::string>> observations;
};

FamilyDocument parse_family(std::string_view text);
std::string serialize_family(const FamilyDocument& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace normsys::dsl
