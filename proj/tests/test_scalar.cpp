#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qma/scalar.hpp>

using namespace qma;

namespace {
Scalar S(const std::string& text) { return parse_scalar(text); }
}  // namespace

TEST_CASE("monomial order is graded lex, descending") {
  Poly p = p_add(p_symbol(SymA), p_mul(p_symbol(SymQ), p_symbol(SymQ)));
  // q^2 has higher total degree than a, so it leads.
  CHECK(p.begin()->first[SymQ] == 2);
  Poly tie = p_add(p_mul(p_symbol(SymQ), p_symbol(SymB)),
                   p_mul(p_symbol(SymA), p_symbol(SymB)));
  // Same degree: q*b lexicographically precedes a*b.
  CHECK(tie.begin()->first[SymQ] == 1);
}

TEST_CASE("field axioms on sampled values") {
  const std::vector<Scalar> vals = {
      Scalar(0), Scalar(1), Scalar(-2), S("q"), S("(q+1)/(q-1)"),
      S("a*b/t - q^2"), S("3/2*l1"), quantum_integer(3)};
  for (const Scalar& x : vals) {
    for (const Scalar& y : vals) {
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK(x - y == -(y - x));
      for (const Scalar& z : vals) {
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
      }
      if (!y.is_zero()) CHECK((x / y) * y == x);
    }
    CHECK(x + Scalar(0) == x);
    CHECK(x * Scalar(1) == x);
    CHECK(x - x == Scalar(0));
    if (!x.is_zero()) CHECK(x * x.inverse() == Scalar(1));
  }
}

TEST_CASE("fractions are canonical") {
  CHECK(S("(q^2-1)/(q-1)").str() == "q + 1");
  CHECK(S("(q^2 - 2*q + 1)/(q^2-1)").str() == "(q - 1)/(q + 1)");
  CHECK(S("2/(2*q-2)").str() == "(1)/(q - 1)");
  CHECK(S("(q^2-1)/(q-1)") == S("q+1"));
  CHECK(S("(a*q+a*b)/(a^2*q+a^2*b)") == S("1/a"));
  // Equality is literal equality of the canonical representation.
  Scalar x = S("1/(q-1) + 1/(q+1)");
  Scalar y = S("2*q/(q^2-1)");
  CHECK(x == y);
  CHECK(x.str() == y.str());
}

TEST_CASE("printer formats") {
  CHECK(Scalar::symbol(SymQ).str() == "q");
  CHECK(Scalar(0).str() == "0");
  CHECK(Scalar(-1).str() == "-1");
  CHECK(S("3/2*q").str() == "3/2*q");
  CHECK(S("q^-2").str() == "(1)/(q^2)");
  CHECK(S("q - q^-1").str() == "(q^2 - 1)/(q)");
  CHECK(S("-q*a + 2").str() == "-q*a + 2");
  CHECK(S("l1*l2 - l3^2").str() == "l1*l2 - l3^2");
}

TEST_CASE("parse/print round trip") {
  const std::vector<std::string> samples = {
      "q", "0", "-1", "3/2*q", "(q^2 - 1)/(q)", "(1)/(q^2)",
      "q^2*a - 2*b + 1", "(l1 - l2)/(t + 1)"};
  for (const std::string& s : samples) {
    Scalar v = S(s);
    CHECK(parse_scalar(v.str()) == v);
  }
}

TEST_CASE("substitution and evaluation") {
  Scalar x = S("(q^2-1)/(q-1)");
  auto sub = x.substituted(SymQ, 3);
  REQUIRE(sub.has_value());
  CHECK(*sub == Scalar(4));
  CHECK_FALSE(S("1/(q-1)").substituted(SymQ, 1).has_value());
  // Partial substitution keeps other symbols.
  Scalar y = S("q*t + l1");
  auto ysub = y.substituted(SymQ, 2);
  REQUIRE(ysub.has_value());
  CHECK(*ysub == S("2*t + l1"));
  std::array<mpq_class, kNumSymbols> point{};
  point.fill(mpq_class(1));
  point[SymQ] = mpq_class(3);
  auto ev = S("(q^2-1)/(q-1)").eval(point);
  REQUIRE(ev.has_value());
  CHECK(*ev == 4);
  CHECK_FALSE(S("1/(q-1)").eval({mpq_class(1)}).has_value());
}

TEST_CASE("gcd of multivariate polynomials") {
  auto P = [](const std::string& s) { return parse_scalar(s).num; };
  CHECK(p_gcd(P("(q+1)*(a+b)"), P("(q^2-1)*(a+b)")) == P("(q+1)*(a+b)"));
  CHECK(p_gcd(P("q^2*a"), P("q*a^2*b")) == P("q*a"));
  CHECK(p_gcd(P("q+1"), P("q+2")) == P("1"));
  CHECK(p_gcd(P("0"), P("2*q")) == P("q"));
  CHECK(p_gcd(P("(q-1)^2*(q+1)"), P("(q-1)*(q+1)^2")) ==
        P("(q-1)*(q+1)"));
  // Content in a second symbol must be pulled out.
  CHECK(p_gcd(P("a*(q+t)^2"), P("a^2*(q+t)")) == P("a*(q+t)"));
}

TEST_CASE("exact division") {
  auto P = [](const std::string& s) { return parse_scalar(s).num; };
  auto d = p_exact_div(P("q^2 - 1"), P("q - 1"));
  REQUIRE(d.has_value());
  CHECK(*d == P("q + 1"));
  CHECK_FALSE(p_exact_div(P("q^2 + 1"), P("q - 1")).has_value());
}

TEST_CASE("powers") {
  CHECK(qpow(-3) * qpow(5) == qpow(2));
  CHECK(qpow(0) == Scalar(1));
  CHECK(S("q+1").pow(0) == Scalar(1));
  CHECK(S("q+1").pow(-2) == Scalar(1) / (S("q+1") * S("q+1")));
  CHECK(S("q^-2") == qpow(-2));
}

TEST_CASE("quantum integers") {
  CHECK(quantum_integer(0) == Scalar(0));
  CHECK(quantum_integer(1) == Scalar(1));
  CHECK(quantum_integer(2).str() == "(q^2 + 1)/(q^2)");
  for (int k = 1; k <= 6; ++k) {
    // Closed form (1 - q^(-2k)) / (1 - q^(-2)).
    Scalar closed = (Scalar(1) - qpow(-2 * k)) / (Scalar(1) - qpow(-2));
    CHECK(quantum_integer(k) == closed);
    // Recurrence [k+1] = 1 + q^(-2) [k].
    CHECK(quantum_integer(k + 1) == Scalar(1) + qpow(-2) * quantum_integer(k));
  }
  // At q = 1 the quantum number becomes the ordinary integer.
  auto at1 = quantum_integer(5).substituted(SymQ, 1);
  REQUIRE(at1.has_value());
  CHECK(*at1 == Scalar(5));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_scalar("q +"), std::exception);
  CHECK_THROWS_AS(parse_scalar("(q"), std::exception);
  CHECK_THROWS_AS(parse_scalar("xyz"), std::exception);
  CHECK_THROWS_AS(parse_scalar("1/0"), std::exception);
  CHECK_THROWS_AS(parse_scalar("q^"), std::exception);
  CHECK_THROWS_AS(parse_scalar("q q"), std::exception);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
  CHECK_THROWS_AS(Scalar(0).inverse(), std::domain_error);
  CHECK_THROWS_AS(parse_scalar("0^-1"), std::exception);
}
