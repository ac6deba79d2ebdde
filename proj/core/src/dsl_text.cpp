#include <fstream>
#include <sstream>

#include "line_reader.hpp"
#include "normsys/dsl.hpp"

namespace normsys::dsl {

namespace detail {

std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  Line current;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  bool in_comment = false;

  auto end_line = [&] {
    if (!current.empty()) lines.push_back(std::move(current));
    current.clear();
    in_comment = false;
    ++line;
    column = 1;
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      end_line();
      continue;
    }
    if (in_comment || c == ' ' || c == '\t' || c == '\f' || c == '\v') {
      ++i;
      ++column;
      continue;
    }
    if (c == '#') {
      in_comment = true;
      continue;
    }
    Token token{{}, line, column};
    if (c == '"') {
      ++i;
      ++column;
      for (;;) {
        if (i >= text.size() || text[i] == '\n' || text[i] == '\r') {
          throw ParseError("unterminated quoted token", token.line, token.column);
        }
        char d = text[i++];
        ++column;
        if (d == '"') break;
        if (d == '\\') {
          if (i >= text.size()) throw ParseError("dangling escape", line, column);
          d = text[i++];
          ++column;
          if (d == 'n') d = '\n';
          else if (d == 't') d = '\t';
          else if (d == 'r') d = '\r';
        }
        token.text += d;
      }
      current.push_back(std::move(token));
      continue;
    }
    while (i < text.size()) {
      const char d = text[i];
      if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '\f' || d == '\v') break;
      token.text += d;
      ++i;
      ++column;
    }
    current.push_back(std::move(token));
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

std::string quote(std::string_view token) {
  const bool bare = !token.empty() && token.front() != '"' &&
                    token.find_first_of(" \t\r\n\f\v#\"") == std::string_view::npos;
  if (bare) return std::string(token);
  std::string out = "\"";
  for (char c : token) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + '"';
}

void expect_arity(const Line& line, std::size_t min, std::size_t max) {
  if (line.size() < min) {
    fail(line.back(), "'" + line.front().text + "' expects at least " + std::to_string(min - 1) +
                          " argument(s)");
  }
  if (max != 0 && line.size() > max) {
    fail(line[max], "'" + line.front().text + "' expects at most " + std::to_string(max - 1) +
                        " argument(s)");
  }
}

}  // namespace detail

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace normsys::dsl
