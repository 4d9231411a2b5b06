#include <doctest.h>

#include <set>

#include "qchar/closedforms.hpp"

using namespace qchar;

namespace {

AMonomial subset_monomial(const std::vector<int>& js) {
  AMonomial m;
  for (int j : js) m = m * AMonomial::a_inv(-2 * j);
  return m;
}

// Brute-force oracle: every subset J of {0..depth-1} with |J| <= cap, sorted by its component starts.
std::map<GappedTuple, QCharSeries> component_start_oracle(int depth, const Region& reg) {
  std::map<GappedTuple, QCharSeries> out;
  for (int mask = 0; mask < (1 << depth); ++mask) {
    if (__builtin_popcount(mask) > reg.degcap) continue;
    std::vector<int> js;
    GappedTuple g;
    for (int j = 0; j < depth; ++j) {
      if (!(mask >> j & 1)) continue;
      js.push_back(j);
      bool starts = j == 0 || !(mask >> (j - 1) & 1);
      if (starts && j != 0) g.rs.push_back(j);
    }
    auto it = out.try_emplace(g, QCharSeries(reg)).first;
    it->second.add(subset_monomial(js), 1);
  }
  return out;
}

}  // namespace

TEST_CASE("fundamental and standard q-characters") {
  Region reg{{-8, 4}, 4};
  QCharSeries f = fundamental_qchar(-1, reg);
  CHECK(f.size() == 2);
  CHECK(f.coefficient(AMonomial::a_inv(0)) == 1);
  CHECK(fundamental_qchar(-3, reg).coefficient(AMonomial::a_inv(-2)) == 1);
  CHECK(fundamental_qchar(1, reg).coefficient(AMonomial::a_inv(2)) == 1);
  CHECK_THROWS(fundamental_qchar(0, reg));
  QCharSeries s = standard_qchar({-1, -3}, reg);
  CHECK(s.size() == 4);
  CHECK(s.coefficient(subset_monomial({0, 1})) == 1);
  CHECK(standard_qchar({}, reg) == QCharSeries::one(reg));
  QCharSeries sq = standard_qchar({-1, -1}, reg);
  CHECK(sq.coefficient(AMonomial::a_inv(0)) == 2);
  CHECK(sq.coefficient(AMonomial::a_inv(0, 2)) == 1);
  CHECK(sq.size() == 3);
}

TEST_CASE("standard q-character equals the expanded product up to N=10") {
  for (int n = 1; n <= 10; ++n) {
    Region reg{{-2 * n, 0}, n};
    std::vector<int> ys;
    for (int k = 0; k < n; ++k) ys.push_back(-2 * k - 1);
    QCharSeries s = standard_qchar(ys, reg);
    CHECK(s.size() == (size_t{1} << n));
    for (auto& [m, c] : s.terms()) CHECK(c == 1);
  }
}

TEST_CASE("KR ladder") {
  Region reg{{-20, 0}, 10};
  CHECK(kr_qchar(1, -1, reg) == fundamental_qchar(-1, reg));
  CHECK(kr_qchar(0, -1, reg) == QCharSeries::one(reg));
  QCharSeries k2 = kr_qchar(2, -1, reg);
  CHECK(k2.size() == 3);
  CHECK(k2.coefficient(subset_monomial({0, 1})) == 1);
  for (int k = 0; k <= 8; ++k) {
    QCharSeries s = kr_qchar(k, -1, reg);
    CHECK(s.size() == static_cast<size_t>(k + 1));
    std::set<int> degrees;
    for (auto& [m, c] : s.terms()) {
      CHECK(c == 1);
      degrees.insert(m.degree());
    }
    CHECK(degrees.size() == static_cast<size_t>(k + 1));
  }
}

TEST_CASE("prefundamental limit") {
  Region reg{{-4, 0}, 2};
  QCharSeries p = prefund_limit_qchar(0, reg);
  CHECK(p.size() == 7);
  for (auto& [m, c] : p.terms()) CHECK(c == 1);
  CHECK(prefund_limit_qchar(0, Region{{-4, 0}, 0}) == QCharSeries::one(Region{{-4, 0}, 0}));
  Region big{{-10, 0}, 4};
  auto st = stabilization_check(
      [&](int n) {
        std::vector<int> ys;
        for (int k = 0; k < n; ++k) ys.push_back(-2 * k - 1);
        return standard_qchar(ys, Region{{-64, 0}, 32});
      },
      big);
  CHECK(st.series == prefund_limit_qchar(0, big));
}

TEST_CASE("chi infinity") {
  Region reg{{-10, 0}, 4};
  CHECK(chi_infinity(psi_of(0, -1), reg) == prefund_limit_qchar(0, reg));
  CHECK(chi_infinity(y_of(-1), reg) == fundamental_qchar(-1, reg));
  CHECK_THROWS(chi_infinity(psi_of(0, 1), reg));
  // mixed: Y_{-1} Psi_{-4}^{-1} is the limit of Y_{-1} Y_{-5} ... Y_{-2N-3}
  LWeight mixed = y_of(-1) * psi_of(-4, -1);
  auto st = stabilization_check(
      [&](int n) {
        std::vector<int> ys{-1};
        for (int k = 0; k < n; ++k) ys.push_back(-5 - 2 * k);
        return standard_qchar(ys, Region{{-64, 0}, 32});
      },
      reg);
  CHECK(st.series == chi_infinity(mixed, reg));
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    LWeight p = random_negative_lweight(seed, 6);
    CHECK(chi_infinity(p, reg).coefficient(AMonomial()) == 1);
  }
}

TEST_CASE("simple q-characters of gapped tuples match the component-start oracle") {
  for (int depth : {4, 6, 8}) {
    Region reg{{-2 * (depth - 1), 0}, 5};
    auto oracle = component_start_oracle(depth, reg);
    auto tuples = gapped_tuples(depth - 1, reg.degcap);
    for (auto& g : tuples) {
      QCharSeries s = simple_qchar_gapped(g, reg);
      auto it = oracle.find(g);
      if (it == oracle.end())
        CHECK(s.size() == 0);
      else
        CHECK(s == it->second);
    }
    for (auto& [g, s] : oracle) CHECK(std::find(tuples.begin(), tuples.end(), g) != tuples.end());
  }
}

TEST_CASE("simple q-character examples") {
  Region reg{{-4, 0}, 2};
  QCharSeries e = simple_qchar_gapped({}, reg);
  CHECK(e.size() == 3);
  CHECK(e.coefficient(subset_monomial({0, 1})) == 1);
  CHECK(e.coefficient(subset_monomial({1})) == 0);
  QCharSeries one = simple_qchar_gapped({{1}}, reg);
  CHECK(one.size() == 2);
  CHECK(one.coefficient(subset_monomial({1})) == 1);
  CHECK(one.coefficient(subset_monomial({1, 2})) == 1);
  CHECK(simple_qchar_gapped({{2, 4}}, Region{{-10, 0}, 1}).size() == 0);
  CHECK_THROWS(simple_qchar_gapped({{2, 3}}, reg));
  for (auto& g : gapped_tuples(7, 4)) {
    Region r{{-14, 0}, 6};
    QCharSeries s = simple_qchar_gapped(g, r);
    REQUIRE(s.size() > 0);
    CHECK(s.terms().begin()->first == subset_monomial(g.rs));
    CHECK(s.terms().begin()->second == 1);
  }
}

TEST_CASE("decomposition verifier") {
  auto rep = verify_decomposition(Region{{-8, 0}, 4});
  CHECK(rep.equal);
  CHECK(rep.multiplicity_free);
  auto zero = verify_decomposition(Region{{-8, 0}, 0});
  CHECK(zero.equal);
  CHECK(zero.lhs.size() == 1);
  auto bad = verify_decomposition(Region{{-8, 0}, 4}, {GappedTuple{{1}}});
  CHECK_FALSE(bad.equal);
  REQUIRE(bad.first_mismatch.has_value());
  CHECK(*bad.first_mismatch == AMonomial::a_inv(-2));
  CHECK(bad.to_json()["first_mismatch"]["monomial"] == "A[-2]^-1");
  for (int depth = 1; depth <= 9; ++depth)
    for (int cap = 0; cap <= 5; ++cap) {
      auto r = verify_decomposition(Region{{-2 * (depth - 1), 0}, cap});
      CHECK(r.equal);
      CHECK(r.multiplicity_free);
    }
}

TEST_CASE("multiplicativity and order compatibility") {
  Region reg{{-14, 0}, 4};
  CHECK(qchar_multiplicativity_check(psi_of(0, -1), psi_of(0, -1), reg));
  CHECK(qchar_multiplicativity_check(psi_of(0, -1), LWeight(), reg));
  CHECK(qchar_multiplicativity_check(y_of(-1), psi_of(-2, -1), reg));
  LWeight p1 = psi_of(0, -1);
  OrderSample direct{p1, LWeight(), p1 * a_of(0).inverse(), p1 * a_of(0).inverse()};
  CHECK(order_compatibility_check({direct}).ok);
  CHECK(order_compatibility_check({direct}).premise_held == 1);
  CHECK(order_compatibility_check({OrderSample{}}).ok);
  auto samples = sample_order_triples(7, 100, 8);
  auto rep = order_compatibility_check(samples);
  CHECK(rep.ok);
  CHECK(rep.premise_held > 50);
  for (auto& s : samples) CHECK(qchar_multiplicativity_check(s.psi1, s.psi2, reg));
}
