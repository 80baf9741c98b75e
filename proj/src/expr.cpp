#include "curvlab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>

namespace curvlab {

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

namespace {

boost::multiprecision::cpp_int parse_digits(std::string_view digits) {
  boost::multiprecision::cpp_int v = 0;
  for (char ch : digits) v = v * 10 + (ch - '0');
  return v;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  const auto bad = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash));
    auto den = trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) throw bad();
    auto d = parse_digits(den);
    if (d == 0) throw bad();
    Rational r(parse_digits(num), d);
    return negative ? Rational(-r) : r;
  }
  // decimal with optional exponent
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = s.substr(0, epos);
    std::string_view ex = s.substr(epos + 1);
    bool eneg = false;
    if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
      eneg = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (!all_digits(ex) || ex.size() > 6) throw bad();
    exponent = std::stol(std::string(ex));
    if (eneg) exponent = -exponent;
  }
  std::string_view whole = mantissa;
  std::string_view frac;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    whole = mantissa.substr(0, dot);
    frac = mantissa.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) throw bad();
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw bad();
  boost::multiprecision::cpp_int num = parse_digits(std::string(whole) + std::string(frac));
  exponent -= static_cast<long>(frac.size());
  boost::multiprecision::cpp_int scale = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational Ring<Rational>::power(const Rational& x, long n) {
  if (n < 0) {
    if (x == 0) throw DomainError("zero raised to a negative power");
    return Rational(1) / power(x, -n);
  }
  Rational result(1);
  for (long k = 0; k < n; ++k) result *= x;
  return result;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const ExprNode> make(auto node) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(node)});
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr::Expr() : node_(make(NumberNode{0.0, Rational(0), "0"})) {}

Expr Expr::number(double value) {
  return Expr(make(NumberNode{value, Rational(value), format_double(value)}));
}

Expr Expr::number(const Rational& value) {
  return Expr(make(NumberNode{to_double(value), value, to_string(value)}));
}

Expr Expr::literal(std::string text) {
  Rational exact = parse_rational(text);
  double value = std::strtod(text.c_str(), nullptr);
  return Expr(make(NumberNode{value, std::move(exact), std::move(text)}));
}

Expr Expr::named(NamedConstant c) { return Expr(make(NamedNode{c})); }

Expr Expr::variable(int index, std::string name) {
  return Expr(make(VariableNode{index, std::move(name)}));
}

Expr Expr::unary_minus(Expr arg) { return Expr(make(NegateNode{std::move(arg)})); }

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(make(BinaryNode{op, std::move(lhs), std::move(rhs)}));
}

Expr Expr::power(Expr base, long exponent) {
  return Expr(make(PowerNode{std::move(base), exponent}));
}

Expr Expr::call(Elementary fn, Expr arg) { return Expr(make(CallNode{fn, std::move(arg)})); }

bool Expr::is_number() const { return std::holds_alternative<NumberNode>(node_->v); }

bool Expr::is_number(double v) const {
  const auto* n = std::get_if<NumberNode>(&node_->v);
  return n != nullptr && n->value == v;
}

namespace {

const Rational* exact_of(const Expr& e) {
  const auto* n = std::get_if<NumberNode>(&e.node().v);
  return n ? &n->exact : nullptr;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  if (auto* x = exact_of(a); x && exact_of(b)) return Expr::number(*x + *exact_of(b));
  return Expr::binary(BinaryOp::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return -b;
  if (auto* x = exact_of(a); x && exact_of(b)) return Expr::number(*x - *exact_of(b));
  return Expr::binary(BinaryOp::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr::integer(0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (auto* x = exact_of(a); x && exact_of(b)) return Expr::number(*x * *exact_of(b));
  if (a.is_number(-1.0)) return -b;
  if (b.is_number(-1.0)) return -a;
  return Expr::binary(BinaryOp::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_number(1.0)) return a;
  if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::integer(0);
  if (auto* x = exact_of(a); x && exact_of(b) && *exact_of(b) != 0) {
    return Expr::number(*x / *exact_of(b));
  }
  return Expr::binary(BinaryOp::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (auto* x = exact_of(a)) return Expr::number(Rational(-*x));
  if (const auto* n = std::get_if<NegateNode>(&a.node().v)) return n->arg;
  return Expr::unary_minus(a);
}

Expr pow(const Expr& base, long exponent) {
  if (exponent == 0) return Expr::integer(1);
  if (exponent == 1) return base;
  if (auto* x = exact_of(base)) return Expr::number(Ring<Rational>::power(*x, exponent));
  return Expr::power(base, exponent);
}

Expr sin(const Expr& a) { return Expr::call(Elementary::Sin, a); }
Expr cos(const Expr& a) { return Expr::call(Elementary::Cos, a); }
Expr sqrt(const Expr& a) { return Expr::call(Elementary::Sqrt, a); }

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct FunctionName {
  std::string_view name;
  Elementary fn;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Elementary::Sin},   {"cos", Elementary::Cos},   {"tan", Elementary::Tan},
    {"exp", Elementary::Exp},   {"log", Elementary::Log},   {"sqrt", Elementary::Sqrt},
    {"sinh", Elementary::Sinh}, {"cosh", Elementary::Cosh},
};

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords) : text_(text), coords_(coords) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::Syntax) const {
    throw ParseError(kind, msg, pos_);
  }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg, ParseError::Kind kind) const {
    throw ParseError(kind, msg, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary_minus(unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::power(base, exponent());
    return base;
  }

  long exponent() {
    skip_space();
    const std::size_t start = pos_;
    if (accept('(')) {
      long v = signed_integer(start);
      if (!accept(')')) fail("expected ')' after exponent");
      return v;
    }
    long v = signed_integer(start);
    if (accept('^')) {
      long rest = exponent();
      if (rest < 0) fail_at(start, "non-integer exponent", ParseError::Kind::NonIntegerExponent);
      long folded = 1;
      for (long k = 0; k < rest; ++k) {
        if (std::abs(folded) > std::numeric_limits<int>::max()) {
          fail_at(start, "exponent overflow", ParseError::Kind::Syntax);
        }
        folded *= v;
      }
      v = folded;
    }
    return v;
  }

  long signed_integer(std::size_t start) {
    bool neg = accept('-');
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (begin == pos_ || (pos_ < text_.size() && (text_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(text_[pos_]))))) {
      fail_at(start, "non-integer exponent", ParseError::Kind::NonIntegerExponent);
    }
    long v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, v);
    if (ec != std::errc{}) fail_at(begin, "exponent out of range", ParseError::Kind::Syntax);
    return neg ? -v : v;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      Expr e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t begin = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at(begin, "malformed number", ParseError::Kind::Syntax);
    // exponent only when followed by digits, so "2e" is not swallowed
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    return Expr::literal(std::string(text_.substr(begin, pos_ - begin)));
  }

  Expr identifier() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(begin, pos_ - begin));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) return Expr::variable(static_cast<int>(i), name);
    }
    for (const auto& f : kFunctions) {
      if (f.name != name) continue;
      if (!accept('(')) fail("function " + name + " requires a parenthesized argument");
      Expr arg = expression();
      if (peek() == ',') fail("function " + name + " takes exactly one argument");
      if (!accept(')')) fail("expected ')' after argument of " + name);
      return Expr::call(f.fn, arg);
    }
    if (name == "pi") return Expr::named(NamedConstant::Pi);
    if (name == "e") return Expr::named(NamedConstant::E);
    fail_at(begin, "unknown identifier '" + name + "'", ParseError::Kind::UnknownIdentifier);
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, std::span<const std::string> coords) {
  return Parser(text, coords).parse();
}

// ---------------------------------------------------------------------------
// Printing, comparison, substitution
// ---------------------------------------------------------------------------

namespace {

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

void print(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, NumberNode>) {
          const bool plain = !n.text.empty() && n.text.front() != '-' &&
                             n.text.find('/') == std::string::npos;
          if (plain) {
            out += n.text;
          } else {
            out += '(';
            out += n.text;
            out += ')';
          }
        } else if constexpr (std::is_same_v<N, NamedNode>) {
          out += n.which == NamedConstant::Pi ? "pi" : "e";
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          out += n.name;
        } else if constexpr (std::is_same_v<N, NegateNode>) {
          out += "(-";
          print(n.arg, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          out += '(';
          print(n.lhs, out);
          out += ' ';
          out += op_char(n.op);
          out += ' ';
          print(n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, PowerNode>) {
          out += '(';
          print(n.base, out);
          out += '^';
          if (n.exponent < 0) {
            out += "(" + std::to_string(n.exponent) + ")";
          } else {
            out += std::to_string(n.exponent);
          }
          out += ')';
        } else {
          out += to_string(n.fn);
          out += '(';
          print(n.arg, out);
          out += ')';
        }
      },
      e.node().v);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.node().v);
        if constexpr (std::is_same_v<N, NumberNode>) {
          return x.exact == y.exact && x.value == y.value;
        } else if constexpr (std::is_same_v<N, NamedNode>) {
          return x.which == y.which;
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          return x.index == y.index && x.name == y.name;
        } else if constexpr (std::is_same_v<N, NegateNode>) {
          return structurally_equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          return x.op == y.op && structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<N, PowerNode>) {
          return x.exponent == y.exponent && structurally_equal(x.base, y.base);
        } else {
          return x.fn == y.fn && structurally_equal(x.arg, y.arg);
        }
      },
      a.node().v);
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, NumberNode> || std::is_same_v<N, NamedNode>) {
          return e;
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          if (n.index < 0 || static_cast<std::size_t>(n.index) >= replacements.size()) {
            throw std::out_of_range("no replacement for variable " + n.name);
          }
          return replacements[static_cast<std::size_t>(n.index)];
        } else if constexpr (std::is_same_v<N, NegateNode>) {
          return -substitute(n.arg, replacements);
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          Expr l = substitute(n.lhs, replacements);
          Expr r = substitute(n.rhs, replacements);
          switch (n.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
          }
          throw std::logic_error("bad binary op");
        } else if constexpr (std::is_same_v<N, PowerNode>) {
          return pow(substitute(n.base, replacements), n.exponent);
        } else {
          return Expr::call(n.fn, substitute(n.arg, replacements));
        }
      },
      e.node().v);
}

int max_variable_index(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> int {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, VariableNode>) {
          return n.index;
        } else if constexpr (std::is_same_v<N, NegateNode>) {
          return max_variable_index(n.arg);
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          return std::max(max_variable_index(n.lhs), max_variable_index(n.rhs));
        } else if constexpr (std::is_same_v<N, PowerNode>) {
          return max_variable_index(n.base);
        } else if constexpr (std::is_same_v<N, CallNode>) {
          return max_variable_index(n.arg);
        } else {
          return -1;
        }
      },
      e.node().v);
}

}  // namespace curvlab
