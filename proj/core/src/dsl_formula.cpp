#include <cctype>

#include "normsys/dsl.hpp"
#include "normsys/error.hpp"

namespace normsys::dsl {

namespace {

enum class Tok { End, Ident, Quoted, LParen, RParen, LBracket, RBracket, Not, And, Or, Implies };

struct Lexeme {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '=' || c == '.' ||
         c == '+' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Lexeme next() {
    skip_space();
    Lexeme lx{Tok::End, {}, line_, column_};
    if (pos_ >= text_.size()) return lx;
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      lx.kind = kind;
      lx.text = std::string(1, c);
      advance();
      return lx;
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '!': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      default: break;
    }
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        lx.kind = Tok::Implies;
        lx.text = "->";
        return lx;
      }
      throw ParseError("expected '->'", lx.line, lx.column);
    }
    if (c == '"') {
      advance();
      lx.kind = Tok::Quoted;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", lx.line, lx.column);
        char d = text_[pos_];
        if (d == '"') break;
        if (d == '\\') {
          advance();
          if (pos_ >= text_.size()) throw ParseError("unterminated string", lx.line, lx.column);
          d = text_[pos_];
        }
        lx.text += d;
        advance();
      }
      advance();
      if (lx.text.empty()) throw ParseError("empty atom", lx.line, lx.column);
      return lx;
    }
    if (ident_char(c)) {
      lx.kind = Tok::Ident;
      while (pos_ < text_.size() && ident_char(text_[pos_])) {
        lx.text += text_[pos_];
        advance();
      }
      return lx;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lx.line, lx.column);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') advance();
      } else if (c == '\r') {
        // Count "\r\n" and lone "\r" as one line break.
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        ++line_;
        column_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Formula document() {
    if (cur_.kind == Tok::End) error("empty formula");
    Formula f = implication();
    if (cur_.kind != Tok::End) error("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(message, cur_.line, cur_.column);
  }
  void shift() { cur_ = lexer_.next(); }
  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      error(std::string("expected ") + what +
            (cur_.kind == Tok::End ? " at end of input" : ", found '" + cur_.text + "'"));
    }
    shift();
  }
  bool is_keyword(const char* word) const { return cur_.kind == Tok::Ident && cur_.text == word; }

  Formula implication() {
    Formula lhs = disjunction();
    if (cur_.kind != Tok::Implies) return lhs;
    shift();
    return Formula::implication(std::move(lhs), implication());
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (cur_.kind == Tok::Or) {
      shift();
      f = Formula::disjunction(std::move(f), conjunction());
    }
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (cur_.kind == Tok::And) {
      shift();
      f = Formula::conjunction(std::move(f), unary());
    }
    return f;
  }
  Formula unary() {
    if (cur_.kind == Tok::Not) {
      shift();
      return Formula::negation(unary());
    }
    if (cur_.kind == Tok::Ident) {
      static const std::pair<const char*, FormulaKind> temporal[] = {
          {"EX", FormulaKind::EX}, {"AX", FormulaKind::AX}, {"EF", FormulaKind::EF},
          {"AF", FormulaKind::AF}, {"EG", FormulaKind::EG}, {"AG", FormulaKind::AG}};
      for (const auto& [word, kind] : temporal) {
        if (cur_.text == word) {
          shift();
          return Formula::unary(kind, unary());
        }
      }
      if (cur_.text == "E" || cur_.text == "A") {
        const FormulaKind kind = cur_.text == "E" ? FormulaKind::EU : FormulaKind::AU;
        shift();
        expect(Tok::LBracket, "'['");
        Formula a = implication();
        if (!is_keyword("U")) error("expected 'U'");
        shift();
        Formula b = implication();
        expect(Tok::RBracket, "']'");
        return Formula::until(kind, std::move(a), std::move(b));
      }
    }
    return primary();
  }
  Formula primary() {
    switch (cur_.kind) {
      case Tok::LParen: {
        shift();
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Quoted: {
        Formula f = Formula::atom(cur_.text);
        shift();
        return f;
      }
      case Tok::Ident: {
        if (cur_.text == "true" || cur_.text == "false") {
          Formula f = cur_.text == "true" ? Formula::truth() : Formula::falsity();
          shift();
          return f;
        }
        if (cur_.text == "U") error("unexpected 'U'");
        Formula f = Formula::atom(cur_.text);
        shift();
        return f;
      }
      case Tok::End: error("unexpected end of formula");
      default: error("unexpected '" + cur_.text + "'");
    }
  }

  Lexer lexer_;
  Lexeme cur_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).document(); }

std::string serialize_formula(const Formula& f) { return f.to_string() + "\n"; }

}  // namespace normsys::dsl
