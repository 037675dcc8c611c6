#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "lincheck/symbolic/rational_expr.hpp"

namespace lincheck::sym {

enum class NodeKind {
  Constant,
  Variable,  // x or y
  Symbol,    // declared constant such as c1, bound at evaluation time
  Sum,
  Difference,
  Product,
  Quotient,
  Power,     // integer exponent
  Negate,
  Function,
};

enum class Func { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(Func f);

/// Immutable expression tree. Copies share structure.
class ExprTree {
 public:
  static ExprTree constant(const BigRational& value);
  static ExprTree variable(Var v);
  static ExprTree symbol(std::string name);
  static ExprTree sum(ExprTree a, ExprTree b);
  static ExprTree difference(ExprTree a, ExprTree b);
  static ExprTree product(ExprTree a, ExprTree b);
  /// Throws DivisionByZero when the denominator is the literal constant 0.
  static ExprTree quotient(ExprTree a, ExprTree b);
  static ExprTree power(ExprTree base, long exponent);
  static ExprTree negate(ExprTree a);
  /// Throws InvalidArgument for log or sqrt of the literal constant 0.
  static ExprTree function(Func f, ExprTree arg);

  NodeKind kind() const;
  const BigRational& value() const;  // Constant
  Var var() const;                   // Variable
  const std::string& name() const;   // Symbol
  Func func() const;                 // Function
  long exponent() const;             // Power
  /// First operand of a binary node, the base of Power, or the argument of
  /// Negate and Function.
  const ExprTree& lhs() const;
  const ExprTree& rhs() const;

  bool is_constant_value(long v) const;
  bool contains_transcendental() const;
  /// Names of all Symbol nodes.
  std::set<std::string> symbols() const;

  /// Structural equality.
  friend bool operator==(const ExprTree& a, const ExprTree& b);

 private:
  struct Node;
  static ExprTree binary(NodeKind kind, ExprTree a, ExprTree b);
  explicit ExprTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Bindings = std::map<std::string, BigRational>;

/// Parses an expression; `constants` lists the identifiers (besides x and y)
/// that may appear. Throws SyntaxError or UnknownSymbol.
ExprTree parse_expr(std::string_view text, const std::set<std::string>& constants = {});

/// Text that parse_expr reads back to an equal value.
std::string to_string(const ExprTree& e);

/// Canonical rational form. Symbols are replaced by their bound values.
/// Throws NotRational on sin/cos/exp/log/sqrt, UnboundSymbol, DivisionByZero.
RationalExpr to_rational(const ExprTree& e, const Bindings& bindings = {});
/// Same with symbols substituted by rational expressions.
RationalExpr to_rational(const ExprTree& e, const std::map<std::string, RationalExpr>& bindings);

/// Chain-rule derivative with light constant folding.
ExprTree diff_tree(const ExprTree& e, Var v);

/// IEEE double evaluation, children evaluated left to right.
/// Throws EvalDomainError on poles, log of non-positive, sqrt of negative.
double eval_numeric(const ExprTree& e, double x, double y, const Bindings& bindings = {});

/// Tree for a rational expression (inverse of to_rational up to structure).
ExprTree from_rational(const RationalExpr& r);

}  // namespace lincheck::sym
