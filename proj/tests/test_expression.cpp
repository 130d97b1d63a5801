#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "corpus.hpp"
#include "nonnoether/expression.hpp"

using namespace nonnoether;
using namespace nonnoether::expr;

namespace {

const Symbols kSymbols{{"q", "p", "th", "I", "x", "y"}, {{"k", 1.5}}};

double eval(const std::string& src, std::vector<double> vars) {
  return Expression::parse(src, kSymbols).evaluate(vars);
}

}  // namespace

TEST_CASE("parse and evaluate examples") {
  const Symbols aa{{"th", "I"}, {}};
  const Expression sq = Expression::parse("I^2", aa);
  const double x[] = {0.0, 0.5};
  CHECK(sq.evaluate(x) == 0.25);

  const Symbols tp{{"th", "p1"}, {}};
  const double y[] = {0.0, 7.0};
  CHECK(Expression::parse("sin(th)*p1 + 2", tp).evaluate(y) == 2.0);

  const Symbols qp{{"q", "p"}, {}};
  const double z[] = {1.0, 0.0};
  CHECK(Expression::parse("q^2/2 + p^2/2", qp).evaluate(z) == 0.5);
  CHECK(Expression::parse("exp(0)*3", qp).evaluate(z) == 3.0);
}

TEST_CASE("syntax errors carry offset and expected set") {
  const Symbols qp{{"q", "p"}, {}};
  try {
    Expression::parse("q +* p", qp);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(Expression::parse("", qp), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("(q + p", qp), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("q p", qp), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("sin q", qp), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("1.2.3", qp), SyntaxError);
  try {
    Expression::parse("q + r", qp);
    FAIL("expected UnknownIdentifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name() == "r");
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(Expression::parse("tan(q)", qp), UnknownIdentifier);
}

TEST_CASE("domain errors") {
  const Symbols qp{{"q", "p"}, {}};
  const double neg[] = {-1.0, 0.0};
  try {
    Expression::parse("2 + ln(q)", qp).evaluate(neg);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(Expression::parse("sqrt(q)", qp).evaluate(neg), DomainError);
  CHECK_THROWS_AS(Expression::parse("1 / p", qp).evaluate(neg), DomainError);
  CHECK_THROWS_AS(Expression::parse("exp(1000)", qp).evaluate(neg), NumericalDomainError);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval("2 ^ 3 ^ 2", {0, 0, 0, 0, 0, 0}) == 512.0);
  CHECK(eval("-2 ^ 2", {0, 0, 0, 0, 0, 0}) == -4.0);
  CHECK(eval("2 ^ -1", {0, 0, 0, 0, 0, 0}) == 0.5);
  CHECK(eval("8 / 4 / 2", {0, 0, 0, 0, 0, 0}) == 1.0);
  CHECK(eval("8 - 4 - 2", {0, 0, 0, 0, 0, 0}) == 2.0);
  CHECK(eval("2 + 3 * 4", {0, 0, 0, 0, 0, 0}) == 14.0);
  CHECK(eval("  k*q\t+ pi ", {2, 0, 0, 0, 0, 0}) == doctest::Approx(3.0 + M_PI));
}

TEST_CASE("coordinates shadow constants") {
  const Symbols s{{"e", "k"}, {{"k", 9.0}}};
  const double x[] = {2.0, 3.0};
  CHECK(Expression::parse("e * k", s).evaluate(x) == 6.0);
  const Symbols t{{"a", "b"}, {{"k", 9.0}}};
  CHECK(Expression::parse("e", t).evaluate(x) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("property: corpus round trips structurally") {
  REQUIRE(corpus::expressions().size() == 50);
  const std::vector<double> x{0.3, -0.7, 1.1, 0.9, 0.4, 0.6};
  for (const std::string& src : corpus::expressions()) {
    INFO(src);
    const Expression a = Expression::parse(src, kSymbols);
    const std::string printed = a.to_string();
    const Expression b = Expression::parse(printed, kSymbols);
    CHECK(a.structurally_equal(b));
    CHECK(b.to_string() == printed);
    double va = 0.0, vb = 0.0;
    bool ok_a = true, ok_b = true;
    try { va = a.evaluate(x); } catch (const NumericalDomainError&) { ok_a = false; }
    try { vb = b.evaluate(x); } catch (const NumericalDomainError&) { ok_b = false; }
    CHECK(ok_a == ok_b);
    if (ok_a) CHECK(std::bit_cast<std::uint64_t>(va) == std::bit_cast<std::uint64_t>(vb));
  }
}

TEST_CASE("constant detection") {
  CHECK_FALSE(Expression::parse("2 * pi + k", kSymbols).uses_variables());
  CHECK(Expression::parse("0 * q", kSymbols).uses_variables());
  CHECK(Expression::constant(3.0).to_string() == "3");
}

TEST_CASE("evaluation is deterministic") {
  const Expression e = Expression::parse("sin(x) * exp(y) / sqrt(2 + q^2)", kSymbols);
  const double x[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const double first = e.evaluate(x);
  for (int i = 0; i < 100; ++i) CHECK(std::bit_cast<std::uint64_t>(e.evaluate(x)) == std::bit_cast<std::uint64_t>(first));
}
