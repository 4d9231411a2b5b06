#include <doctest.h>

#include <random>

#include "qchar/qseries.hpp"

using namespace qchar;

namespace {

QCharSeries binomial(int r, const Region& reg) {
  QCharSeries s = QCharSeries::one(reg);
  s.add(AMonomial::a_inv(r), 1);
  return s;
}

QCharSeries standard_product(int n, const Region& reg) {
  QCharSeries s = QCharSeries::one(reg);
  for (int k = 0; k < n; ++k) s = truncated_product(s, binomial(-2 * k, reg));
  return s;
}

QCharSeries random_series(std::mt19937& rng, const Region& reg) {
  std::uniform_int_distribution<int> idx(0, 3), e(0, 2), c(-3, 3), n(1, 6);
  QCharSeries s(reg);
  int k = n(rng);
  for (int i = 0; i < k; ++i) {
    AMonomial m = AMonomial::a_inv(-2 * idx(rng), e(rng)) * AMonomial::a_inv(-2 * idx(rng), e(rng));
    s.add(m, c(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("monomial order and text") {
  AMonomial a0 = AMonomial::a_inv(0), am2 = AMonomial::a_inv(-2), am4 = AMonomial::a_inv(-4);
  CHECK(AMonomial() < a0);
  CHECK(a0 < am2);
  CHECK(am2 < a0 * am2);
  CHECK(a0 * am2 < a0 * am4);
  CHECK(a0 * am4 < am2 * am4);
  CHECK((a0 * a0).exponent(0) == 2);
  CHECK(parse_amonomial((a0 * am2 * am2).str()) == a0 * am2 * am2);
  CHECK_THROWS(AMonomial::a_inv(1));
  CHECK_THROWS_AS(parse_amonomial("A[0]^2"), ParseError);
}

TEST_CASE("truncated product examples") {
  Region reg{{-8, 0}, 4};
  QCharSeries p = truncated_product(binomial(0, reg), binomial(-2, reg));
  CHECK(p.size() == 4);
  CHECK(p.coefficient(AMonomial::a_inv(0) * AMonomial::a_inv(-2)) == 1);
  CHECK(truncated_product(p, QCharSeries::one(reg)) == p);
  Region cap1{{-8, 0}, 1};
  QCharSeries sq = truncated_product(binomial(0, cap1), binomial(0, cap1));
  CHECK(sq.size() == 2);
  CHECK(sq.coefficient(AMonomial::a_inv(0)) == 2);
}

TEST_CASE("coefficient queries") {
  Region reg{{-4, 0}, 3};
  QCharSeries s = binomial(0, reg);
  CHECK(s.coefficient(AMonomial::a_inv(0)) == 1);
  CHECK(s.coefficient(AMonomial::a_inv(0, 2)) == 0);
  CHECK_THROWS_WITH_AS(s.coefficient(AMonomial::a_inv(-6)), doctest::Contains("untracked"), std::out_of_range);
  CHECK_THROWS_AS(s.coefficient(AMonomial::a_inv(0, 4)), std::out_of_range);
}

TEST_CASE("product is commutative and associative") {
  std::mt19937 rng(41);
  Region reg{{-6, 0}, 5};
  for (int t = 0; t < 50; ++t) {
    QCharSeries a = random_series(rng, reg), b = random_series(rng, reg), c = random_series(rng, reg);
    CHECK(truncated_product(a, b) == truncated_product(b, a));
    CHECK(truncated_product(truncated_product(a, b), c) == truncated_product(a, truncated_product(b, c)));
    QCharSeries ab = truncated_product(a, b);
    for (auto& [m, k] : ab.terms()) CHECK(k != 0);
  }
}

TEST_CASE("standard product is the subset sum") {
  for (int n = 0; n <= 10; ++n) {
    Region reg{{-2 * n, 0}, n};
    QCharSeries s = standard_product(n, reg);
    CHECK(s.size() == (size_t{1} << n));
    for (int mask = 0; mask < (1 << n); ++mask) {
      AMonomial m;
      for (int k = 0; k < n; ++k)
        if (mask >> k & 1) m = m * AMonomial::a_inv(-2 * k);
      CHECK(s.coefficient(m) == 1);
    }
  }
}

TEST_CASE("stabilization") {
  Region reg{{-4, 0}, 3};
  auto st = stabilization_check([&](int n) { return standard_product(n, Region{{-64, 0}, 32}); }, reg);
  CHECK(st.n_stable == 3);
  CHECK(st.series.size() == 8);
  auto c = stabilization_check([&](int) { return QCharSeries::one(reg); }, reg);
  CHECK(c.n_stable == 1);
  auto grow = [&](int n) {
    QCharSeries s(reg);
    s.add(AMonomial::a_inv(0), n);
    return s;
  };
  CHECK_THROWS_AS(stabilization_check(grow, reg, 10), std::runtime_error);
}

TEST_CASE("overflow is detected") {
  Region reg{{0, 0}, 32};
  QCharSeries s(reg);
  s.add(AMonomial(), 1LL << 62);
  CHECK_THROWS_AS(s.add(AMonomial(), 1LL << 62), std::overflow_error);
  QCharSeries big(reg);
  big.add(AMonomial(), 1LL << 40);
  CHECK_THROWS_AS(truncated_product(big, big), std::overflow_error);
}

TEST_CASE("json layout") {
  Region reg{{-2, 0}, 1};
  auto j = binomial(0, reg).to_json();
  CHECK(j["terms"].size() == 2);
  CHECK(j["terms"][1]["monomial"] == "A[0]^-1");
  CHECK(j["degcap"] == 1);
}
