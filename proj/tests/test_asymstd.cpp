#include <doctest.h>

#include "qchar/asymstd.hpp"
#include "qchar/closedforms.hpp"

using namespace qchar;

namespace {

SubsetIndex S(std::vector<int> depths) { return SubsetIndex::of_depths(depths); }

QScalar q(int n) { return QScalar::q_pow(n); }
const QScalar qq = q(1) - q(-1);

// h_r eigenvalue on v_J for Psi_0^{-1} from the explicit per-factor sum
QScalar h_eigen_oracle(const SubsetIndex& J, int r) {
  QScalar qr = QScalar(q_int(r)) / QScalar(r);
  QScalar s = QScalar(1) / (QScalar(r) * qq);  // sum over all m of q^{-(2m+1)r} [r]/r
  for (auto& [m, k] : J.elems()) s -= (q(-(2 * m + 1) * r) + q(-(2 * m - 1) * r)) * qr;
  return s;
}

}  // namespace

TEST_CASE("k action") {
  TModule t(psi_of(0, -1), 4);
  CHECK(t.act_k(TState::basis(S({}))) == TState::basis(S({})));
  CHECK(t.act_k(TState::basis(S({0}))) == q(-2) * TState::basis(S({0})));
  CHECK(t.act_k(TState::basis(S({0, 3}))) == q(-4) * TState::basis(S({0, 3})));
  TModule y(y_of(-1) * psi_of(-4, -1), 3);
  CHECK(y.act_k(TState::basis(S({})), false) == q(1) * TState::basis(S({})));
}

TEST_CASE("x+ action") {
  TModule t(psi_of(0, -1), 5);
  for (int m = 0; m <= 3; ++m) CHECK(t.act_xplus(m, TState::basis(S({}))).is_zero());
  TState x = t.act_xplus(0, TState::basis(S({0})));
  REQUIRE(x.coeffs.size() == 1);
  CHECK(x.coeffs.begin()->first == S({}));
  for (int size = 1; size <= 3; ++size)
    for (auto& J : t.basis(size, 4))
      for (int m = 0; m <= 2; ++m)
        for (auto& [K, c] : t.act_xplus(m, TState::basis(J)).coeffs) {
          CHECK(K.size() == J.size() - 1);
          CHECK(K.max_depth() <= J.max_depth());
        }
  CHECK_THROWS_AS(t.act_xplus(0, TState::basis(S({6}))), std::out_of_range);
}

TEST_CASE("h action examples") {
  TModule t(psi_of(0, -1), 4);
  TState h1 = t.act_h(1, TState::basis(S({1})));
  TState want = (q(-4) / qq) * TState::basis(S({1})) + (QScalar(0) - q(-1) * (q(2) - q(-2))) * TState::basis(S({0}));
  CHECK(h1 == want);
  CHECK(t.act_h(1, TState::basis(S({0}))) == (QScalar(0) - q(1) + q(-2) / qq) * TState::basis(S({0})));
  CHECK(t.act_h(1, TState::basis(S({}))) == (QScalar(1) / qq) * TState::basis(S({})));
  CHECK(t.tail_scalar(1, 3) == q(-8) / qq);
}

TEST_CASE("Cartan relation and commuting h") {
  TModule t(psi_of(0, -1), 5);
  for (int size = 0; size <= 2; ++size)
    for (auto& J : t.basis(size, 3)) {
      TState v = TState::basis(J);
      for (int m = 0; m <= 2; ++m) CHECK(t.act_k(t.act_xplus(m, v)) == q(2) * t.act_xplus(m, t.act_k(v)));
      for (int r = 1; r <= 3; ++r)
        for (int s = r + 1; s <= 3; ++s) CHECK(t.act_h(r, t.act_h(s, v)) == t.act_h(s, t.act_h(r, v)));
    }
}

TEST_CASE("actions are stable in the truncation depth") {
  for (const LWeight& psi : {psi_of(0, -1), y_of(-1) * psi_of(-4, -1), psi_of(0, -1) * psi_of(-2, -1)}) {
    TModule t(psi, 6);
    for (int size = 0; size <= 2; ++size)
      for (auto& J : t.basis(size, 2)) {
        TState v = TState::basis(J);
        for (int r = 1; r <= 3; ++r) {
          CHECK(t.act_h(r, v) == t.act_h(r, v, 1));
          CHECK(t.act_h(r, v) == t.act_h(r, v, 2));
        }
        for (int m = 0; m <= 2; ++m) CHECK(t.act_xplus(m, v) == t.act_xplus(m, v, 1));
      }
  }
}

TEST_CASE("triangularity") {
  TModule t(psi_of(0, -1), 6);
  auto rep = triangularity_report(t, 2, Window{-10, 0}, 3);
  CHECK(rep.ok());
  CHECK(rep.checked > 0);
  CHECK(rep.conv_literal_violations > 0);
  for (auto& v : rep.violations) MESSAGE(v);
  TModule m(y_of(-1) * psi_of(-4, -1), 5);
  CHECK(triangularity_report(m, 2, Window{-8, 0}, 2).ok());
  TModule d(psi_of(0, -1).pow(2), 3);
  auto dr = triangularity_report(d, 2, Window{-4, 0}, 2);
  CHECK(dr.ok());
  for (auto& v : dr.violations) MESSAGE(v);
}

TEST_CASE("l-weight basis") {
  TModule t(psi_of(0, -1), 6);
  auto b = lweight_basis(t, 1, Window{-2, 0}, 2);
  CHECK(b.at(S({})).w == TState::basis(S({})));
  CHECK(b.at(S({0})).w == TState::basis(S({0})));
  CHECK(b.at(S({1})).w == TState::basis(S({1})) + QScalar(-1) * TState::basis(S({0})));
  CHECK(b.at(S({1})).lweight == psi_of(0, -1) * a_of(-2).inverse());
  auto j = lweight_basis_json(b);
  CHECK(j.size() == 2);
  CHECK(j[1]["v_to_w"][0][1] == "-1");

  auto big = lweight_basis(t, 3, Window{-12, 0}, 4);
  CHECK(big.size() == 1 + 7 + 21 + 35);
  QCharSeries from_basis(Region{{-12, 0}, 3});
  for (auto& [J, e] : big) {
    for (int r = 1; r <= 4; ++r) CHECK(e.eigenvalues[r - 1] == h_eigen_oracle(J, r));
    auto exps = a_inverse_exponents(e.lweight, t.psi());
    REQUIRE(exps.has_value());
    from_basis.add(AMonomial::from_map(*exps), 1);
  }
  CHECK(from_basis == qchar_T(psi_of(0, -1), Region{{-12, 0}, 3}));

  TModule mixed(y_of(-1) * psi_of(-4, -1), 4);
  CHECK(lweight_basis(mixed, 2, Window{-6, 0}, 3).size() == 7);
  // repeated slots carry Jordan blocks: only generalized l-weight vectors exist
  TModule doubled(psi_of(0, -1).pow(2), 4);
  CHECK_THROWS_WITH(lweight_basis(doubled, 2, Window{-6, 0}, 3), doctest::Contains("not diagonalizable"));
}

TEST_CASE("q-character of T") {
  Region reg{{-10, 0}, 4};
  CHECK(qchar_T(psi_of(0, -1), reg) == prefund_limit_qchar(0, reg));
  QCharSeries two = qchar_T(psi_of(0, -1).pow(2), reg);
  CHECK(two.coefficient(AMonomial::a_inv(0)) == 2);
  CHECK(two.coefficient(AMonomial::a_inv(0, 2)) == 1);
  CHECK(qchar_T(psi_of(0, -1), Region{{-10, 0}, 0}) == QCharSeries::one(Region{{-10, 0}, 0}));
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    LWeight p = random_negative_lweight(seed, 5);
    CHECK(qchar_T(p, reg) == chi_infinity(p, reg));
  }
}

TEST_CASE("x- divergence witness") {
  auto w1 = xminus_divergence_witness(1);
  REQUIRE(w1.size() == 2);
  CHECK(w1[0] == q(-1));
  CHECK(w1[1] == q(-3));
  auto w3 = xminus_divergence_witness(3);
  REQUIRE(w3.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(w3[k] == q(-2 * k - 1));
}
