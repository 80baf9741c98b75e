#pragma once

/// \file
/// Expression ASTs for metric and tensor components.
///
/// Expressions are parsed from text against a list of coordinate names and
/// evaluated over any scalar ring with a Ring<S> specialization: double,
/// Jet2<T> (value and derivatives in one pass) and Rational (exact; rejects
/// transcendental functions and named constants).
///
/// Grammar (whitespace-insensitive):
///
///     expr     := term (('+' | '-') term)*
///     term     := unary (('*' | '/') unary)*
///     unary    := '-' unary | power
///     power    := primary ('^' exponent)?
///     exponent := ['-'] int ('^' exponent)? | '(' ['-'] int ')'
///     primary  := number | ident | ident '(' expr ')' | '(' expr ')'
///
/// Precedence is ^ > unary minus > * / > + -, so "-x^2" is -(x^2). Binary
/// operators associate left; chained integer exponents associate right and are
/// folded at parse time. Functions: sin cos tan exp log sqrt sinh cosh.
/// Constants: pi e (coordinate names shadow them).

#include "curvlab/jet.hpp"
#include "curvlab/rational.hpp"

#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace curvlab {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, NonIntegerExponent };

  ParseError(Kind kind, const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at byte " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// An operator the requested scalar ring cannot evaluate (e.g. sin over rationals).
class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinaryOp { Add, Sub, Mul, Div };
enum class NamedConstant { Pi, E };

struct ExprNode;

/// Immutable expression handle with value semantics (shared, never mutated).
class Expr {
 public:
  Expr();  // the number 0

  static Expr number(double value);
  static Expr number(const Rational& value);
  static Expr integer(long value) { return number(Rational(value)); }
  static Expr literal(std::string text);  // decimal or integer text, kept verbatim
  static Expr named(NamedConstant c);
  static Expr variable(int index, std::string name);
  static Expr unary_minus(Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr power(Expr base, long exponent);
  static Expr call(Elementary fn, Expr arg);

  const ExprNode& node() const { return *node_; }

  bool is_number() const;
  /// True for a numeric literal equal to v.
  bool is_number(double v) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct NumberNode {
  double value;
  Rational exact;
  std::string text;
};
struct NamedNode {
  NamedConstant which;
};
struct VariableNode {
  int index;
  std::string name;
};
struct NegateNode {
  Expr arg;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct PowerNode {
  Expr base;
  long exponent;
};
struct CallNode {
  Elementary fn;
  Expr arg;
};

struct ExprNode {
  std::variant<NumberNode, NamedNode, VariableNode, NegateNode, BinaryNode, PowerNode, CallNode> v;
};

// Builders with light constant folding (0 + x, 1 * x, 0 * x, x / 1).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);

Expr parse_expr(std::string_view text, std::span<const std::string> coords);

/// Canonical printer; parse(print(parse(s))) reproduces parse(s) node for node.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Replaces variable i by replacements[i].
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Largest variable index referenced, or -1.
int max_variable_index(const Expr& e);

template <class S>
struct Ring;

template <>
struct Ring<double> {
  static double number(const NumberNode& n) { return n.value; }
  static double named(NamedConstant c) {
    return c == NamedConstant::Pi ? std::numbers::pi : std::numbers::e;
  }
  static double apply(Elementary f, double x) { return curvlab::apply(f, x); }
  static double power(double x, long n) { return integer_power(x, n); }
  static double divide(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
  }
};

template <class T>
struct Ring<Jet2<T>> {
  static Jet2<T> number(const NumberNode& n) { return Jet2<T>(Ring<T>::number(n)); }
  static Jet2<T> named(NamedConstant c) { return Jet2<T>(Ring<T>::named(c)); }
  static Jet2<T> apply(Elementary f, const Jet2<T>& x) { return curvlab::apply(f, x); }
  static Jet2<T> power(const Jet2<T>& x, long n) { return integer_power(x, n); }
  static Jet2<T> divide(const Jet2<T>& a, const Jet2<T>& b) { return a / b; }
};

template <>
struct Ring<Rational> {
  static Rational number(const NumberNode& n) { return n.exact; }
  static Rational named(NamedConstant c) {
    throw RingError(std::string("constant ") + (c == NamedConstant::Pi ? "pi" : "e") +
                    " is not rational");
  }
  static Rational apply(Elementary f, const Rational&) {
    throw RingError("function " + std::string(to_string(f)) + " is not supported over rationals");
  }
  static Rational power(const Rational& x, long n);
  static Rational divide(const Rational& a, const Rational& b) {
    if (b == 0) throw DomainError("division by zero");
    return a / b;
  }
};

template <class S>
S evaluate(const Expr& e, std::span<const S> env) {
  using R = Ring<S>;
  return std::visit(
      [&](const auto& n) -> S {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, NumberNode>) {
          return R::number(n);
        } else if constexpr (std::is_same_v<N, NamedNode>) {
          return R::named(n.which);
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          if (n.index < 0 || static_cast<std::size_t>(n.index) >= env.size()) {
            throw std::out_of_range("no value bound for variable " + n.name);
          }
          return env[static_cast<std::size_t>(n.index)];
        } else if constexpr (std::is_same_v<N, NegateNode>) {
          return -evaluate<S>(n.arg, env);
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          S a = evaluate<S>(n.lhs, env);
          S b = evaluate<S>(n.rhs, env);
          switch (n.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            case BinaryOp::Div: return R::divide(a, b);
          }
          throw std::logic_error("bad binary op");
        } else if constexpr (std::is_same_v<N, PowerNode>) {
          return R::power(evaluate<S>(n.base, env), n.exponent);
        } else {
          return R::apply(n.fn, evaluate<S>(n.arg, env));
        }
      },
      e.node().v);
}

template <class S>
S evaluate(const Expr& e, const std::vector<S>& env) {
  return evaluate<S>(e, std::span<const S>(env));
}

}  // namespace curvlab
