#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "normsys/error.hpp"

namespace normsys::dsl::detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

using Line = std::vector<Token>;

/// Splits text into whitespace-separated tokens per line, dropping comments
/// and blank lines.
std::vector<Line> tokenize_lines(std::string_view text);

[[noreturn]] inline void fail(const Token& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

/// The token as written in a document: bare when it is nonempty and free
/// of blanks, '#' and '"', double-quoted with backslash escapes otherwise.
std::string quote(std::string_view token);

/// Line must have between min and max tokens (max == 0: unbounded).
void expect_arity(const Line& line, std::size_t min, std::size_t max = 0);

}  // namespace normsys::dsl::detail
