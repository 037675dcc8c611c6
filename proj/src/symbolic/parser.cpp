// Pratt parser for the expression grammar.
//
// Binding powers: + - (1), * / (2), ^ (3), prefix minus (4). A prefix minus
// binds tighter than ^, so "-x^2" reads as (-x)^2. All binary operators are
// left-associative. Exponents must be integer literals with an optional sign.

#include <cctype>
#include <optional>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"

namespace lincheck::sym {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])) != 0) ++i_;
    const std::size_t start = i_;
    if (i_ >= s_.size()) return {Tok::End, start, ""};
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) != 0 || s_[i_] == '.')) ++i_;
      return {Tok::Number, start, std::string(s_.substr(start, i_ - start))};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) != 0 || s_[i_] == '_')) ++i_;
      return {Tok::Ident, start, std::string(s_.substr(start, i_ - start))};
    }
    ++i_;
    switch (c) {
      case '+': return {Tok::Plus, start, "+"};
      case '-': return {Tok::Minus, start, "-"};
      case '*': return {Tok::Star, start, "*"};
      case '/': return {Tok::Slash, start, "/"};
      case '^': return {Tok::Caret, start, "^"};
      case '(': return {Tok::LParen, start, "("};
      case ')': return {Tok::RParen, start, ")"};
      default: break;
    }
    throw SyntaxError(start, {"number", "identifier", "operator", "("}, std::string(1, c));
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

std::optional<Func> lookup_func(const std::string& name) {
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  if (name == "exp") return Func::Exp;
  if (name == "log") return Func::Log;
  if (name == "sqrt") return Func::Sqrt;
  return std::nullopt;
}

int infix_power(Tok t) {
  switch (t) {
    case Tok::Plus:
    case Tok::Minus: return 1;
    case Tok::Star:
    case Tok::Slash: return 2;
    case Tok::Caret: return 3;
    default: return 0;
  }
}

constexpr int kPrefixMinus = 4;

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>& constants) : lex_(text), constants_(constants) {
    advance();
  }

  ExprTree parse() {
    ExprTree e = expression(0);
    if (cur_.kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(cur_.pos, std::move(expected), describe(cur_));
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail({what});
    advance();
  }

  ExprTree expression(int min_power) {
    ExprTree lhs = prefix();
    for (;;) {
      const int p = infix_power(cur_.kind);
      if (p == 0 || p <= min_power) return lhs;
      const Tok op = cur_.kind;
      advance();
      if (op == Tok::Caret) {
        lhs = ExprTree::power(std::move(lhs), exponent());
        continue;
      }
      ExprTree rhs = expression(p);
      switch (op) {
        case Tok::Plus: lhs = ExprTree::sum(std::move(lhs), std::move(rhs)); break;
        case Tok::Minus: lhs = ExprTree::difference(std::move(lhs), std::move(rhs)); break;
        case Tok::Star: lhs = ExprTree::product(std::move(lhs), std::move(rhs)); break;
        default: lhs = ExprTree::quotient(std::move(lhs), std::move(rhs)); break;
      }
    }
  }

  long exponent() {
    bool negative = false;
    bool paren = false;
    if (cur_.kind == Tok::LParen) {
      paren = true;
      advance();
    }
    if (cur_.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    if (cur_.kind != Tok::Number || cur_.text.find('.') != std::string::npos) fail({"integer exponent"});
    long n = 0;
    try {
      n = std::stol(cur_.text);
    } catch (const std::out_of_range&) {
      fail({"integer exponent"});
    }
    advance();
    if (paren) expect(Tok::RParen, ")");
    return negative ? -n : n;
  }

  ExprTree prefix() {
    switch (cur_.kind) {
      case Tok::Number: {
        auto v = parse_rational(cur_.text);
        if (!v) fail({"number"});
        advance();
        return ExprTree::constant(*v);
      }
      case Tok::Minus: {
        advance();
        return ExprTree::negate(expression(kPrefixMinus));
      }
      case Tok::LParen: {
        advance();
        ExprTree e = expression(0);
        expect(Tok::RParen, ")");
        return e;
      }
      case Tok::Ident: return identifier();
      default: fail({"number", "identifier", "-", "("});
    }
  }

  ExprTree identifier() {
    const Token t = cur_;
    advance();
    if (t.text == "x") return ExprTree::variable(Var::X);
    if (t.text == "y") return ExprTree::variable(Var::Y);
    if (auto f = lookup_func(t.text)) {
      expect(Tok::LParen, "(");
      ExprTree arg = expression(0);
      expect(Tok::RParen, ")");
      return ExprTree::function(*f, std::move(arg));
    }
    if (constants_.count(t.text) != 0) return ExprTree::symbol(t.text);
    throw UnknownSymbol(t.pos, t.text);
  }

  Lexer lex_;
  const std::set<std::string>& constants_;
  Token cur_{Tok::End, 0, ""};
};

}  // namespace

ExprTree parse_expr(std::string_view text, const std::set<std::string>& constants) {
  return Parser(text, constants).parse();
}

}  // namespace lincheck::sym
