#include "curvlab/expr.hpp"

#include <doctest.h>

#include <random>

using namespace curvlab;

namespace {

std::vector<std::string> names(std::initializer_list<const char*> xs) {
  return {xs.begin(), xs.end()};
}

Expr parse(std::string_view s, const std::vector<std::string>& coords) { return parse_expr(s, coords); }

}  // namespace

TEST_CASE("parse shapes") {
  auto c5 = names({"x", "y", "u", "v", "z"});
  Expr e = parse("cos(z)^2", c5);
  const auto& pw = std::get<PowerNode>(e.node().v);
  CHECK(pw.exponent == 2);
  const auto& call = std::get<CallNode>(pw.base.node().v);
  CHECK(call.fn == Elementary::Cos);
  CHECK(std::get<VariableNode>(call.arg.node().v).index == 4);
  CHECK(to_string(e) == "(cos(z)^2)");

  auto h = names({"x1", "x2", "y1", "y2", "z"});
  Expr f = parse("1/4 + x1*x1", h);
  const auto& add = std::get<BinaryNode>(f.node().v);
  CHECK(add.op == BinaryOp::Add);
  const auto& div = std::get<BinaryNode>(add.lhs.node().v);
  CHECK(div.op == BinaryOp::Div);
  CHECK(div.lhs.is_number(1.0));
  CHECK(div.rhs.is_number(4.0));
  const auto& mul = std::get<BinaryNode>(add.rhs.node().v);
  CHECK(mul.op == BinaryOp::Mul);
  CHECK(to_string(f) == "((1 / 4) + (x1 * x1))");
}

TEST_CASE("precedence and associativity") {
  auto c = names({"x", "y"});
  CHECK(to_string(parse("-x^2", c)) == "(-(x^2))");
  CHECK(to_string(parse("x - y - 1", c)) == "((x - y) - 1)");
  CHECK(to_string(parse("x / y * 2", c)) == "((x / y) * 2)");
  CHECK(to_string(parse("2^3^2", c)) == "(2^9)");
  CHECK(to_string(parse("x^-2", c)) == "(x^(-2))");
  CHECK(to_string(parse("x^(-2)", c)) == "(x^(-2))");
  CHECK(to_string(parse("-x * y", c)) == "((-x) * y)");
  CHECK(to_string(parse("  x*( y +1 ) ", c)) == "(x * (y + 1))");
}

TEST_CASE("parse errors carry kind and byte offset") {
  auto c = names({"x", "y"});
  try {
    parse("cos(w)", c);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::UnknownIdentifier);
    CHECK(e.offset() == 4);
    CHECK(std::string(e.what()).find("'w'") != std::string::npos);
  }
  try {
    parse("x^y", c);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::NonIntegerExponent);
  }
  try {
    parse("x^1.5", c);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::NonIntegerExponent);
  }
  try {
    parse("x + * y", c);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("sin(x, y)", c), ParseError);
  CHECK_THROWS_AS(parse("(x + y", c), ParseError);
  CHECK_THROWS_AS(parse("x y", c), ParseError);
  CHECK_THROWS_AS(parse("", c), ParseError);
  CHECK_THROWS_AS(parse("sin x", c), ParseError);
}

TEST_CASE("coordinates shadow named constants") {
  auto c = names({"e", "t"});
  Expr a = parse("e + pi", c);
  std::vector<double> env{10.0, 0.0};
  CHECK(evaluate(a, env) == 10.0 + std::numbers::pi);
}

TEST_CASE("evaluation over the three rings") {
  auto c = names({"x", "y"});
  CHECK(evaluate(parse("x^2 + y", c), std::vector<double>{3, 4}) == 13);

  auto z = names({"z"});
  Expr cos2 = parse("cos(z)^2", z);
  Jet j = evaluate(cos2, seed_all(std::vector<double>{0.0}));
  CHECK(j.value() == 1);
  CHECK(j.grad(0) == 0);
  CHECK(j.hess(0, 0) == doctest::Approx(-2));
  // independent oracle: second central difference of cos^2 at 0
  const double h = 1e-4;
  const double fd = (std::pow(std::cos(h), 2) - 2 + std::pow(std::cos(-h), 2)) / (h * h);
  CHECK(std::abs(j.hess(0, 0) - fd) < 1e-6);

  std::vector<Rational> r{Rational(1, 2), Rational(1, 3)};
  CHECK(evaluate(parse("x*y", c), r) == Rational(1, 6));
  CHECK(evaluate(parse("0.125 * x^-1", c), r) == Rational(1, 4));
  CHECK_THROWS_AS(evaluate(parse("sin(x)", c), r), RingError);
  CHECK_THROWS_AS(evaluate(parse("pi", c), r), RingError);
  CHECK_THROWS_AS(evaluate(parse("x / (y - y)", c), r), DomainError);
  CHECK_THROWS_AS(evaluate(parse("log(x - 1)", c), std::vector<double>{0.5, 0}), DomainError);
}

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/5") == Rational(3, 5));
  CHECK(parse_rational("-4/5") == Rational(-4, 5));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1.5e-2") == Rational(3, 200));
  CHECK(parse_rational("12") == Rational(12));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(7)) == "7");
}

namespace {

// Random expression generator for the round-trip properties.
std::string random_text(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  static const char* leaves[] = {"x", "y", "2", "0.5", "3/4", "pi"};
  static const char* fns[] = {"sin", "cos", "exp", "sinh", "cosh", "tan"};
  std::uniform_int_distribution<int> leaf(0, 5);
  std::uniform_int_distribution<int> fn(0, 5);
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2: return leaves[leaf(rng)];
    case 3: return random_text(rng, depth - 1) + " + " + random_text(rng, depth - 1);
    case 4: return random_text(rng, depth - 1) + " - " + random_text(rng, depth - 1);
    case 5: return random_text(rng, depth - 1) + " * " + random_text(rng, depth - 1);
    case 6: return "(" + random_text(rng, depth - 1) + ") / (2 + x*x)";
    case 7: return "-" + random_text(rng, depth - 1);
    case 8: return "(" + random_text(rng, depth - 1) + ")^" + std::to_string(std::uniform_int_distribution<int>(0, 3)(rng));
    default: return std::string(fns[fn(rng)]) + "(" + random_text(rng, depth - 1) + ")";
  }
}

}  // namespace

TEST_CASE("parse . print . parse is a fixed point") {
  auto c = names({"x", "y"});
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    std::string text = random_text(rng, 4);
    CAPTURE(text);
    Expr a = parse(text, c);
    std::string printed = to_string(a);
    Expr b = parse(printed, c);
    CHECK(structurally_equal(a, b));
    CHECK(to_string(b) == printed);
  }
}

TEST_CASE("real evaluation equals the jet value exactly") {
  auto c = names({"x", "y"});
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    std::string text = random_text(rng, 4);
    CAPTURE(text);
    Expr e = parse(text, c);
    std::vector<double> p{u(rng), u(rng)};
    double real = 0;
    try {
      real = evaluate(e, p);
    } catch (const DomainError&) {
      continue;
    }
    Jet j = evaluate(e, seed_all(p));
    if (std::isnan(real)) {
      CHECK(std::isnan(j.value()));
    } else {
      CHECK(j.value() == real);
    }
  }
}

TEST_CASE("builders fold constants and substitute") {
  auto c = names({"x", "y"});
  Expr x = Expr::variable(0, "x");
  Expr y = Expr::variable(1, "y");
  CHECK(structurally_equal(x + Expr::integer(0), x));
  CHECK(structurally_equal(Expr::integer(1) * y, y));
  CHECK((Expr::integer(0) * y).is_number(0));
  CHECK(to_string(Expr::integer(1) / Expr::integer(4)) == "(1/4)");
  CHECK(to_string(-Expr::integer(3)) == "(-3)");
  CHECK(structurally_equal(-(-x), x));
  Expr e = parse("x*y + sin(x)", c);
  std::vector<Expr> rep{y, Expr::integer(2)};
  Expr s = substitute(e, rep);
  CHECK(to_string(s) == "((y * 2) + sin(y))");
  CHECK(max_variable_index(s) == 1);
  CHECK(max_variable_index(parse("2 + pi", c)) == -1);
  // builder output reparses to an expression with the same exact value
  Expr built = pow(x, 3) / (Expr::integer(2) + y) - Expr::number(Rational(-3, 7));
  std::vector<Rational> at{Rational(1, 3), Rational(5, 2)};
  CHECK(evaluate(parse(to_string(built), c), at) == evaluate(built, at));
}
