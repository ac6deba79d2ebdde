#include "normsys/formula.hpp"

#include <algorithm>
#include <vector>

#include "normsys/error.hpp"

namespace normsys {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Formula> children;
};

namespace {

const std::string kEmpty;

bool unary_kind(FormulaKind k) {
  switch (k) {
    case FormulaKind::Not:
    case FormulaKind::EX:
    case FormulaKind::AX:
    case FormulaKind::EF:
    case FormulaKind::AF:
    case FormulaKind::EG:
    case FormulaKind::AG:
      return true;
    default:
      return false;
  }
}

bool binary_kind(FormulaKind k) {
  switch (k) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::EU:
    case FormulaKind::AU:
      return true;
    default:
      return false;
  }
}

const char* keyword(FormulaKind k) {
  switch (k) {
    case FormulaKind::EX: return "EX";
    case FormulaKind::AX: return "AX";
    case FormulaKind::EF: return "EF";
    case FormulaKind::AF: return "AF";
    case FormulaKind::EG: return "EG";
    case FormulaKind::AG: return "AG";
    default: return "";
  }
}

bool plain_atom_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '=' || c == '.' || c == '+' || c == '\'';
}

bool reserved_word(std::string_view s) {
  static const char* const words[] = {"true", "false", "EX", "AX", "EF", "AF",
                                      "EG",   "AG",    "E",  "A",  "U"};
  return std::any_of(std::begin(words), std::end(words), [&](const char* w) { return s == w; });
}

std::string quote_atom(const std::string& name) {
  const bool plain = !name.empty() && !reserved_word(name) &&
                     std::all_of(name.begin(), name.end(), plain_atom_char);
  if (plain) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Formula Formula::truth() { return Formula(std::make_shared<const Node>(Node{FormulaKind::True, {}, {}})); }
Formula Formula::falsity() { return Formula(std::make_shared<const Node>(Node{FormulaKind::False, {}, {}})); }

Formula Formula::atom(std::string name) {
  if (name.empty()) throw Error("atomic proposition name must not be empty");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(name), {}}));
}

Formula Formula::negation(Formula f) { return unary(FormulaKind::Not, std::move(f)); }
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::And, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Implies, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::unary(FormulaKind kind, Formula f) {
  if (!unary_kind(kind)) throw Error("not a unary formula kind");
  return Formula(std::make_shared<const Node>(Node{kind, {}, {std::move(f)}}));
}

Formula Formula::until(FormulaKind kind, Formula a, Formula b) {
  if (kind != FormulaKind::EU && kind != FormulaKind::AU) throw Error("not an until kind");
  return Formula(std::make_shared<const Node>(Node{kind, {}, {std::move(a), std::move(b)}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept {
  return node_->kind == FormulaKind::Atom ? node_->name : kEmpty;
}

const Formula& Formula::left() const {
  if (node_->children.empty()) throw Error("formula has no operand");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (node_->children.size() < 2) throw Error("formula has no right operand");
  return node_->children[1];
}

bool Formula::is_unary() const noexcept { return unary_kind(node_->kind); }
bool Formula::is_binary() const noexcept { return binary_kind(node_->kind); }

std::size_t Formula::size() const {
  std::size_t n = 1;
  if (is_unary() || is_binary()) n += left().size();
  if (is_binary()) n += right().size();
  return n;
}

std::size_t Formula::depth() const {
  if (is_binary()) return 1 + std::max(left().depth(), right().depth());
  if (is_unary()) return 1 + left().depth();
  return 0;
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  std::vector<const Formula*> work{this};
  while (!work.empty()) {
    const Formula* f = work.back();
    work.pop_back();
    if (f->kind() == FormulaKind::Atom) out.insert(f->name());
    if (f->is_unary() || f->is_binary()) work.push_back(&f->left());
    if (f->is_binary()) work.push_back(&f->right());
  }
  return out;
}

std::string Formula::to_string() const {
  auto operand = [](const Formula& f) {
    return f.is_binary() && f.kind() != FormulaKind::EU && f.kind() != FormulaKind::AU
               ? "(" + f.to_string() + ")"
               : f.to_string();
  };
  switch (kind()) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: return quote_atom(name());
    case FormulaKind::Not: return "!" + operand(left());
    case FormulaKind::And: return operand(left()) + " & " + operand(right());
    case FormulaKind::Or: return operand(left()) + " | " + operand(right());
    case FormulaKind::Implies: return operand(left()) + " -> " + operand(right());
    case FormulaKind::EU: return "E[" + left().to_string() + " U " + right().to_string() + "]";
    case FormulaKind::AU: return "A[" + left().to_string() + " U " + right().to_string() + "]";
    default: return std::string(keyword(kind())) + " " + operand(left());
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.is_unary() || a.is_binary()) {
    if (!(a.left() == b.left())) return false;
  }
  if (a.is_binary()) return a.right() == b.right();
  return true;
}

namespace {

Formula negate(Formula f) {
  if (f.kind() == FormulaKind::Not) return f.left();
  return Formula::negation(std::move(f));
}

}  // namespace

Formula normalize(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::True:
    case K::Atom:
      return f;
    case K::False:
      return Formula::negation(Formula::truth());
    case K::Not:
      return negate(normalize(f.left()));
    case K::Or:
      return Formula::disjunction(normalize(f.left()), normalize(f.right()));
    case K::And:
      return negate(Formula::disjunction(negate(normalize(f.left())), negate(normalize(f.right()))));
    case K::Implies:
      return Formula::disjunction(negate(normalize(f.left())), normalize(f.right()));
    case K::EX:
      return Formula::unary(K::EX, normalize(f.left()));
    case K::AX:
      return negate(Formula::unary(K::EX, negate(normalize(f.left()))));
    case K::EF:
      return Formula::until(K::EU, Formula::truth(), normalize(f.left()));
    case K::AG:
      return negate(Formula::until(K::EU, Formula::truth(), negate(normalize(f.left()))));
    case K::AF:
      return negate(Formula::unary(K::EG, negate(normalize(f.left()))));
    case K::EG:
      return Formula::unary(K::EG, normalize(f.left()));
    case K::EU:
      return Formula::until(K::EU, normalize(f.left()), normalize(f.right()));
    case K::AU: {
      Formula a = normalize(f.left());
      Formula b = normalize(f.right());
      Formula not_b = negate(b);
      Formula both_fail = negate(Formula::disjunction(a, b));  // !a & !b
      Formula left = negate(Formula::until(K::EU, not_b, both_fail));
      Formula right = negate(Formula::unary(K::EG, not_b));
      return negate(Formula::disjunction(negate(left), negate(right)));
    }
  }
  throw Error("unknown formula kind");
}

bool is_core(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::True:
    case K::Atom:
      return true;
    case K::Not:
    case K::EX:
    case K::EG:
      return is_core(f.left());
    case K::Or:
    case K::EU:
      return is_core(f.left()) && is_core(f.right());
    default:
      return false;
  }
}

Formula conjoin_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::truth();
  Formula result = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) result = Formula::conjunction(result, parts[i]);
  return result;
}

}  // namespace normsys
