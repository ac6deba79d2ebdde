#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace normsys {

/// CTL abstract syntax. Core kinds are True, Atom, Not, Or, EX, EU and EG;
/// the rest are derived and removed by normalize().
enum class FormulaKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  EX,
  AX,
  EF,
  AF,
  EG,
  AG,
  EU,
  AU,
};

/// Immutable CTL formula with shared subtrees. Cheap to copy.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula unary(FormulaKind kind, Formula f);              // EX AX EF AF EG AG
  static Formula until(FormulaKind kind, Formula a, Formula b);   // EU AU

  FormulaKind kind() const noexcept;
  /// Atom name; empty for other kinds.
  const std::string& name() const noexcept;
  /// Operand of unary kinds, left operand of binary kinds.
  const Formula& left() const;
  const Formula& right() const;
  bool is_unary() const noexcept;
  bool is_binary() const noexcept;

  /// Number of nodes.
  std::size_t size() const;
  /// Nesting depth; atoms and constants have depth 0.
  std::size_t depth() const;
  std::set<std::string> atoms() const;

  /// Concrete syntax accepted by dsl::parse_formula.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Rewrites into the core {True, Atom, Not, Or, EX, EU, EG}:
///   False = !True, a & b = !(!a | !b), a -> b = !a | b, AX f = !EX !f,
///   EF f = E[true U f], AG f = !E[true U !f], AF f = !EG !f,
///   A[f U g] = !E[!g U (!f & !g)] & !EG !g.
/// Double negations are removed, which makes the rewrite idempotent.
Formula normalize(const Formula& f);

bool is_core(const Formula& f);

/// Conjunction of all formulas (true when empty).
Formula conjoin_all(const std::vector<Formula>& parts);

}  // namespace normsys
