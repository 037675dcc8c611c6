#include "lincheck/symbolic/expr_tree.hpp"

#include <cmath>
#include <optional>

#include "lincheck/errors.hpp"

namespace lincheck::sym {

struct ExprTree::Node {
  NodeKind kind;
  BigRational value;
  Var var = Var::X;
  std::string name;
  Func func = Func::Sin;
  long exponent = 0;
  std::optional<ExprTree> lhs;
  std::optional<ExprTree> rhs;
};

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

ExprTree ExprTree::constant(const BigRational& value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  return ExprTree(std::move(n));
}

ExprTree ExprTree::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->var = v;
  return ExprTree(std::move(n));
}

ExprTree ExprTree::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Symbol;
  n->name = std::move(name);
  return ExprTree(std::move(n));
}

ExprTree ExprTree::binary(NodeKind kind, ExprTree a, ExprTree b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return ExprTree(std::move(n));
}

ExprTree ExprTree::sum(ExprTree a, ExprTree b) {
  return binary(NodeKind::Sum, std::move(a), std::move(b));
}

ExprTree ExprTree::difference(ExprTree a, ExprTree b) {
  return binary(NodeKind::Difference, std::move(a), std::move(b));
}

ExprTree ExprTree::product(ExprTree a, ExprTree b) {
  return binary(NodeKind::Product, std::move(a), std::move(b));
}

ExprTree ExprTree::quotient(ExprTree a, ExprTree b) {
  if (b.is_constant_value(0)) throw DivisionByZero("quotient with constant zero denominator");
  return binary(NodeKind::Quotient, std::move(a), std::move(b));
}

ExprTree ExprTree::power(ExprTree base, long exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Power;
  n->exponent = exponent;
  n->lhs = std::move(base);
  return ExprTree(std::move(n));
}

ExprTree ExprTree::negate(ExprTree a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Negate;
  n->lhs = std::move(a);
  return ExprTree(std::move(n));
}

ExprTree ExprTree::function(Func f, ExprTree arg) {
  if ((f == Func::Log || f == Func::Sqrt) && arg.is_constant_value(0))
    throw InvalidArgument(std::string(func_name(f)) + " of constant zero");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Function;
  n->func = f;
  n->lhs = std::move(arg);
  return ExprTree(std::move(n));
}

NodeKind ExprTree::kind() const { return node_->kind; }
const BigRational& ExprTree::value() const { return node_->value; }
Var ExprTree::var() const { return node_->var; }
const std::string& ExprTree::name() const { return node_->name; }
Func ExprTree::func() const { return node_->func; }
long ExprTree::exponent() const { return node_->exponent; }

const ExprTree& ExprTree::lhs() const { return *node_->lhs; }
const ExprTree& ExprTree::rhs() const { return *node_->rhs; }

bool ExprTree::is_constant_value(long v) const {
  return node_->kind == NodeKind::Constant && node_->value == v;
}

bool ExprTree::contains_transcendental() const {
  switch (kind()) {
    case NodeKind::Function: return true;
    case NodeKind::Constant:
    case NodeKind::Variable:
    case NodeKind::Symbol: return false;
    case NodeKind::Power:
    case NodeKind::Negate: return lhs().contains_transcendental();
    default: return lhs().contains_transcendental() || rhs().contains_transcendental();
  }
}

std::set<std::string> ExprTree::symbols() const {
  std::set<std::string> out;
  auto walk = [&out](const ExprTree& e, auto&& self) -> void {
    switch (e.kind()) {
      case NodeKind::Symbol: out.insert(e.name()); return;
      case NodeKind::Constant:
      case NodeKind::Variable: return;
      case NodeKind::Power:
      case NodeKind::Negate:
      case NodeKind::Function: self(e.lhs(), self); return;
      default:
        self(e.lhs(), self);
        self(e.rhs(), self);
    }
  };
  walk(*this, walk);
  return out;
}

bool operator==(const ExprTree& a, const ExprTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Constant: return a.value() == b.value();
    case NodeKind::Variable: return a.var() == b.var();
    case NodeKind::Symbol: return a.name() == b.name();
    case NodeKind::Power: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    case NodeKind::Negate: return a.lhs() == b.lhs();
    case NodeKind::Function: return a.func() == b.func() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---- printing -----------------------------------------------------------------

namespace {

// Binding strength: + - < * / < ^ < unary minus < primary.
int level(const ExprTree& e) {
  switch (e.kind()) {
    case NodeKind::Sum:
    case NodeKind::Difference: return 1;
    case NodeKind::Product:
    case NodeKind::Quotient: return 2;
    case NodeKind::Power: return 3;
    case NodeKind::Negate: return 4;
    default: return 5;
  }
}

void print(const ExprTree& e, int min_level, std::string& out);

void print_child(const ExprTree& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    print(e, 0, out);
    out += ')';
  } else {
    print(e, min_level, out);
  }
}

void print(const ExprTree& e, int /*min_level*/, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      const BigRational& v = e.value();
      if (sgn(v) >= 0 && v.get_den() == 1) {
        out += v.get_str();
      } else {
        out += '(' + v.get_str() + ')';
      }
      return;
    }
    case NodeKind::Variable: out += var_name(e.var()); return;
    case NodeKind::Symbol: out += e.name(); return;
    case NodeKind::Sum:
      print_child(e.lhs(), 1, out);
      out += " + ";
      print_child(e.rhs(), 2, out);
      return;
    case NodeKind::Difference:
      print_child(e.lhs(), 1, out);
      out += " - ";
      print_child(e.rhs(), 2, out);
      return;
    case NodeKind::Product:
      print_child(e.lhs(), 2, out);
      out += '*';
      print_child(e.rhs(), 3, out);
      return;
    case NodeKind::Quotient:
      print_child(e.lhs(), 2, out);
      out += '/';
      print_child(e.rhs(), 3, out);
      return;
    case NodeKind::Power:
      print_child(e.lhs(), 5, out);
      out += '^' + std::to_string(e.exponent());
      return;
    case NodeKind::Negate:
      out += '-';
      print_child(e.lhs(), 5, out);
      return;
    case NodeKind::Function:
      out += func_name(e.func());
      out += '(';
      print(e.lhs(), 0, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const ExprTree& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

// ---- exact conversion --------------------------------------------------------

namespace {

template <typename Lookup>
RationalExpr convert(const ExprTree& e, const Lookup& lookup) {
  switch (e.kind()) {
    case NodeKind::Constant: return RationalExpr(e.value());
    case NodeKind::Variable: return RationalExpr::variable(e.var());
    case NodeKind::Symbol: return lookup(e.name());
    case NodeKind::Sum: return convert(e.lhs(), lookup) + convert(e.rhs(), lookup);
    case NodeKind::Difference: return convert(e.lhs(), lookup) - convert(e.rhs(), lookup);
    case NodeKind::Product: return convert(e.lhs(), lookup) * convert(e.rhs(), lookup);
    case NodeKind::Quotient: {
      RationalExpr num = convert(e.lhs(), lookup);
      RationalExpr den = convert(e.rhs(), lookup);
      if (den.is_zero()) throw DivisionByZero("denominator " + to_string(e.rhs()) + " is identically zero");
      return num / den;
    }
    case NodeKind::Power: {
      RationalExpr base = convert(e.lhs(), lookup);
      if (e.exponent() < 0 && base.is_zero())
        throw DivisionByZero("negative power of identically zero " + to_string(e.lhs()));
      return base.pow(static_cast<int>(e.exponent()));
    }
    case NodeKind::Negate: return -convert(e.lhs(), lookup);
    case NodeKind::Function:
      throw NotRational(std::string(func_name(e.func())) + " is not a rational operation: " + to_string(e));
  }
  throw Error("unreachable node kind");
}

}  // namespace

RationalExpr to_rational(const ExprTree& e, const Bindings& bindings) {
  return convert(e, [&](const std::string& name) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw UnboundSymbol(name);
    return RationalExpr(it->second);
  });
}

RationalExpr to_rational(const ExprTree& e, const std::map<std::string, RationalExpr>& bindings) {
  return convert(e, [&](const std::string& name) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw UnboundSymbol(name);
    return it->second;
  });
}

ExprTree from_rational(const RationalExpr& r) { return parse_expr(r.to_string()); }

// ---- differentiation ---------------------------------------------------------

namespace {

ExprTree mk_const(long v) { return ExprTree::constant(BigRational(v)); }

ExprTree mk_neg(const ExprTree& a) {
  if (a.kind() == NodeKind::Constant) return ExprTree::constant(-a.value());
  if (a.kind() == NodeKind::Negate) return a.lhs();
  return ExprTree::negate(a);
}

ExprTree mk_sum(const ExprTree& a, const ExprTree& b) {
  if (a.is_constant_value(0)) return b;
  if (b.is_constant_value(0)) return a;
  if (a.kind() == NodeKind::Constant && b.kind() == NodeKind::Constant)
    return ExprTree::constant(a.value() + b.value());
  if (b.kind() == NodeKind::Negate) return ExprTree::difference(a, b.lhs());
  return ExprTree::sum(a, b);
}

ExprTree mk_diff(const ExprTree& a, const ExprTree& b) {
  if (b.is_constant_value(0)) return a;
  if (a.is_constant_value(0)) return mk_neg(b);
  if (a.kind() == NodeKind::Constant && b.kind() == NodeKind::Constant)
    return ExprTree::constant(a.value() - b.value());
  if (b.kind() == NodeKind::Negate) return ExprTree::sum(a, b.lhs());
  return ExprTree::difference(a, b);
}

ExprTree mk_prod(const ExprTree& a, const ExprTree& b) {
  if (a.is_constant_value(0) || b.is_constant_value(0)) return mk_const(0);
  if (a.is_constant_value(1)) return b;
  if (b.is_constant_value(1)) return a;
  if (a.kind() == NodeKind::Constant && b.kind() == NodeKind::Constant)
    return ExprTree::constant(a.value() * b.value());
  if (a.is_constant_value(-1)) return mk_neg(b);
  if (b.is_constant_value(-1)) return mk_neg(a);
  if (a.kind() == NodeKind::Negate) return mk_neg(mk_prod(a.lhs(), b));
  if (b.kind() == NodeKind::Negate) return mk_neg(mk_prod(a, b.lhs()));
  return ExprTree::product(a, b);
}

ExprTree mk_quot(const ExprTree& a, const ExprTree& b) {
  if (a.is_constant_value(0)) return mk_const(0);
  if (b.is_constant_value(1)) return a;
  if (a.kind() == NodeKind::Negate) return mk_neg(mk_quot(a.lhs(), b));
  return ExprTree::quotient(a, b);
}

ExprTree mk_pow(const ExprTree& base, long n) {
  if (n == 0) return mk_const(1);
  if (n == 1) return base;
  return ExprTree::power(base, n);
}

}  // namespace

ExprTree diff_tree(const ExprTree& e, Var v) {
  switch (e.kind()) {
    case NodeKind::Constant:
    case NodeKind::Symbol: return mk_const(0);
    case NodeKind::Variable: return mk_const(e.var() == v ? 1 : 0);
    case NodeKind::Sum: return mk_sum(diff_tree(e.lhs(), v), diff_tree(e.rhs(), v));
    case NodeKind::Difference: return mk_diff(diff_tree(e.lhs(), v), diff_tree(e.rhs(), v));
    case NodeKind::Product:
      return mk_sum(mk_prod(diff_tree(e.lhs(), v), e.rhs()), mk_prod(e.lhs(), diff_tree(e.rhs(), v)));
    case NodeKind::Quotient: {
      const ExprTree& a = e.lhs();
      const ExprTree& b = e.rhs();
      ExprTree num = mk_diff(mk_prod(diff_tree(a, v), b), mk_prod(a, diff_tree(b, v)));
      return mk_quot(num, mk_pow(b, 2));
    }
    case NodeKind::Power: {
      const long n = e.exponent();
      return mk_prod(mk_prod(mk_const(n), mk_pow(e.lhs(), n - 1)), diff_tree(e.lhs(), v));
    }
    case NodeKind::Negate: return mk_neg(diff_tree(e.lhs(), v));
    case NodeKind::Function: {
      const ExprTree& a = e.lhs();
      const ExprTree da = diff_tree(a, v);
      if (da.is_constant_value(0)) return mk_const(0);
      switch (e.func()) {
        case Func::Sin: return mk_prod(ExprTree::function(Func::Cos, a), da);
        case Func::Cos: return mk_neg(mk_prod(ExprTree::function(Func::Sin, a), da));
        case Func::Exp: return mk_prod(e, da);
        case Func::Log: return mk_quot(da, a);
        case Func::Sqrt: return mk_quot(da, mk_prod(mk_const(2), e));
      }
    }
  }
  throw Error("unreachable node kind");
}

// ---- numeric evaluation ------------------------------------------------------

double eval_numeric(const ExprTree& e, double x, double y, const Bindings& bindings) {
  switch (e.kind()) {
    case NodeKind::Constant: return e.value().get_d();
    case NodeKind::Variable: return e.var() == Var::X ? x : y;
    case NodeKind::Symbol: {
      auto it = bindings.find(e.name());
      if (it == bindings.end()) throw UnboundSymbol(e.name());
      return it->second.get_d();
    }
    case NodeKind::Sum: {
      const double a = eval_numeric(e.lhs(), x, y, bindings);
      return a + eval_numeric(e.rhs(), x, y, bindings);
    }
    case NodeKind::Difference: {
      const double a = eval_numeric(e.lhs(), x, y, bindings);
      return a - eval_numeric(e.rhs(), x, y, bindings);
    }
    case NodeKind::Product: {
      const double a = eval_numeric(e.lhs(), x, y, bindings);
      return a * eval_numeric(e.rhs(), x, y, bindings);
    }
    case NodeKind::Quotient: {
      const double a = eval_numeric(e.lhs(), x, y, bindings);
      const double b = eval_numeric(e.rhs(), x, y, bindings);
      if (b == 0.0) throw EvalDomainError("pole", to_string(e));
      return a / b;
    }
    case NodeKind::Power: {
      const double b = eval_numeric(e.lhs(), x, y, bindings);
      if (b == 0.0 && e.exponent() < 0) throw EvalDomainError("pole", to_string(e));
      return std::pow(b, static_cast<double>(e.exponent()));
    }
    case NodeKind::Negate: return -eval_numeric(e.lhs(), x, y, bindings);
    case NodeKind::Function: {
      const double a = eval_numeric(e.lhs(), x, y, bindings);
      switch (e.func()) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (!(a > 0.0)) throw EvalDomainError("log of non-positive value", to_string(e));
          return std::log(a);
        case Func::Sqrt:
          if (a < 0.0) throw EvalDomainError("sqrt of negative value", to_string(e));
          return std::sqrt(a);
      }
    }
  }
  throw Error("unreachable node kind");
}

}  // namespace lincheck::sym
