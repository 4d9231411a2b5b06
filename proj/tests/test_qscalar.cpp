#include <doctest.h>

#include <random>

#include "qchar/qscalar.hpp"

using namespace qchar;

namespace {

QLaurent random_laurent(std::mt19937& rng, int span = 4, int cmax = 3) {
  std::uniform_int_distribution<int> e(-span, span), c(-cmax, cmax), n(0, 4);
  QLaurent p;
  int terms = n(rng);
  for (int i = 0; i < terms; ++i) p += QLaurent::monomial(e(rng), c(rng));
  return p;
}

QLaurent random_nonzero(std::mt19937& rng) {
  QLaurent p;
  while (p.is_zero()) p = random_laurent(rng);
  return p;
}

// Oracle: evaluate the sum definition of [m] directly at q0.
Rational qint_oracle(int m, const Rational& q0) {
  Rational num = 1, den = q0 - Rational(1) / q0;
  Rational qm = 1;
  for (int k = 0; k < std::abs(m); ++k) qm *= q0;
  num = qm - Rational(1) / qm;
  Rational r = num / den;
  return m < 0 ? Rational(-r) : r;
}

}  // namespace

TEST_CASE("q_int values") {
  CHECK(q_int(1) == QLaurent(1));
  CHECK(q_int(2) == QLaurent::monomial(1) + QLaurent::monomial(-1));
  CHECK(q_int(0).is_zero());
  CHECK(q_int(-3) == -q_int(3));
  for (int m = -6; m <= 6; ++m)
    for (int q0 : {2, 3, -5}) CHECK(q_int(m).eval(q0) == qint_oracle(m, q0));
}

TEST_CASE("specialize examples") {
  CHECK(QScalar(q_int(2)).specialize(2) == Rational(5, 2));
  CHECK(QScalar::q_pow(-2).specialize(2) == Rational(1, 4));
  QScalar inv = QScalar(1) / QScalar(QLaurent::monomial(1) - QLaurent::monomial(-1));
  CHECK_THROWS_AS(inv.specialize(1), std::domain_error);
  CHECK(inv.specialize(2) == Rational(2, 3));
}

TEST_CASE("quantum integer times q^n is a shift") {
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n) {
      QLaurent p = q_int(m) * QLaurent::monomial(n);
      CHECK(p == q_int(m).shifted(n));
    }
}

TEST_CASE("laurent ring axioms on random triples") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    QLaurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    for (auto& [e, v] : (a * b).terms()) CHECK(sgn(v) != 0);
  }
}

TEST_CASE("gcd and exact division") {
  QLaurent x = QLaurent::monomial(1);
  QLaurent f = x * x - QLaurent(1);  // (q-1)(q+1)
  QLaurent g = x - QLaurent(1);
  CHECK(gcd(f, g) == g);
  CHECK(gcd(f.shifted(-3), g.shifted(5)) == g);
  CHECK(gcd(QLaurent(6) * f, QLaurent(4) * g) == QLaurent(2) * g);
  auto d = divide_exact(f, g);
  REQUIRE(d.has_value());
  CHECK(*d == x + QLaurent(1));
  CHECK_FALSE(divide_exact(g, f).has_value());
  CHECK_FALSE(divide_exact(QLaurent(3), QLaurent(2)).has_value());
}

TEST_CASE("canonical form makes equality syntactic") {
  QLaurent x = QLaurent::monomial(1);
  QScalar a(x * x - QLaurent(1), x - QLaurent(1));
  CHECK(a == QScalar(x + QLaurent(1)));
  QScalar b(QLaurent(2), QLaurent(-4).shifted(3));
  CHECK(b == QScalar(QLaurent(-1).shifted(-3), QLaurent(2)));
  CHECK(b.den() == QLaurent(2));
  // q^-4/(q - q^-1) has the normalized denominator q^2 - 1
  QScalar c = QScalar::q_pow(-4) / QScalar(x - QLaurent::monomial(-1));
  CHECK(c.den() == x * x - QLaurent(1));
  CHECK(c.num() == QLaurent::monomial(-3));
}

TEST_CASE("round trip normalize(a/b) * b == a") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    QLaurent a = random_laurent(rng), b = random_nonzero(rng);
    QScalar s(a, b);
    QScalar back = s * QScalar(b);
    CHECK(back.is_laurent());
    CHECK(back.num() == a);
  }
}

TEST_CASE("field axioms and specialization is a ring morphism") {
  std::mt19937 rng(13);
  const Rational q0(3, 2);
  int checked = 0;
  while (checked < 100) {
    QScalar a(random_laurent(rng), random_nonzero(rng));
    QScalar b(random_laurent(rng), random_nonzero(rng));
    Rational sa, sb;
    try {
      sa = a.specialize(q0);
      sb = b.specialize(q0);
    } catch (const std::domain_error&) {
      continue;
    }
    CHECK((a + b).specialize(q0) == sa + sb);
    CHECK((a * b).specialize(q0) == sa * sb);
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    ++checked;
  }
}

TEST_CASE("json serialization is sorted exponent:coefficient") {
  QLaurent p = QLaurent::monomial(2, 3) + QLaurent::monomial(-1, -2);
  CHECK(p.to_json().dump() == R"(["-1:-2","2:3"])");
  CHECK(q_int(2).str() == "q + q^-1");
}

TEST_CASE("q-binomial at n=4") {
  QScalar b = q_binomial(4, 2);
  CHECK(b.is_laurent());
  // q^4 + q^2 + 2 + q^-2 + q^-4
  QLaurent expect = QLaurent::monomial(4) + QLaurent::monomial(2) + QLaurent(2) + QLaurent::monomial(-2) +
                    QLaurent::monomial(-4);
  CHECK(b.num() == expect);
}
