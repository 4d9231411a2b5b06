#include <doctest.h>

#include <random>

#include "qchar/borelneg.hpp"

using namespace qchar;

namespace {

QScalar q(int n) { return QScalar::q_pow(n); }

// Euler's pentagonal recurrence, independent of word enumeration
std::vector<long> partition_numbers(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > i) break;
      long sign = k % 2 ? 1 : -1;
      p[i] += sign * p[i - g1];
      if (g2 <= i) p[i] += sign * p[i - g2];
    }
  return p;
}

PBWWord random_word(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 5), idx(1, 6);
  PBWWord w(len(rng));
  for (auto& m : w) m = idx(rng);
  return w;
}

BorelNegElement single(const PBWWord& w, const QScalar& c = QScalar(1)) {
  BorelNegElement e;
  e.add(w, c);
  return e;
}

}  // namespace

TEST_CASE("normal ordering examples") {
  CHECK(pbw_normalize({2, 1}) == single({1, 2}, q(-2)));
  CHECK(pbw_normalize({1, 2}) == single({1, 2}));
  BorelNegElement want = single({1, 3}, q(-2));
  want.add({2, 2}, q(-2) - QScalar(1));
  CHECK(pbw_normalize({3, 1}) == want);
  CHECK(pbw_normalize(PBWWord{}) == single({}));
  CHECK(word_str({1, 2}) == "x[1] x[2]");
  CHECK_THROWS(pbw_normalize({0, 1}));
  CHECK_THROWS_AS(pbw_normalize({6, 5, 4, 3, 2, 1}, RewriteStrategy::Leftmost, 0, 3), std::runtime_error);
}

TEST_CASE("graded dimensions are partition numbers") {
  CHECK(graded_dimension(0) == 1);
  CHECK(graded_dimension(4) == 5);
  CHECK(graded_dimension(7) == 15);
  auto p = partition_numbers(12);
  for (int n = 0; n <= 12; ++n) CHECK(graded_dimension(n) == p[n]);
}

TEST_CASE("normal ordering is idempotent and graded") {
  std::mt19937 rng(61);
  for (int t = 0; t < 500; ++t) {
    PBWWord w = random_word(rng);
    BorelNegElement e = pbw_normalize(w);
    for (auto& [w2, c] : e.terms) {
      CHECK(is_normal(w2));
      CHECK(word_degree(w2) == word_degree(w));
      CHECK(w2.size() == w.size());
    }
    CHECK(pbw_normalize(e) == e);
  }
}

TEST_CASE("rewriting is confluent") {
  std::mt19937 rng(67);
  for (int t = 0; t < 200; ++t) {
    PBWWord w = random_word(rng);
    BorelNegElement a = pbw_normalize(w, RewriteStrategy::Leftmost);
    CHECK(a == pbw_normalize(w, RewriteStrategy::Rightmost));
    CHECK(a == pbw_normalize(w, RewriteStrategy::Random, 1000 + t));
  }
}

TEST_CASE("linear oracle") {
  for (int d : {0, 1, 4, 6}) {
    auto rep = linear_oracle_check(d);
    CHECK(rep.ok);
    for (auto& f : rep.failures) MESSAGE(f);
  }
  CHECK_FALSE(linear_oracle_check(4, true).ok);
  CHECK_THROWS(linear_oracle_check(9));
}

TEST_CASE("h action on the induced module") {
  TModule t(psi_of(0, -1), 4);
  SubsetIndex e;
  TState w0 = TState::basis(e);
  QScalar h1_top = t.act_h(1, w0).coeff(e);
  InducedState x1 = InducedState::pure({1}, w0);
  InducedState want;
  want.add({2}, e, QScalar(0) - QScalar(q_int(2)));
  want.add({1}, e, h1_top);
  CHECK(act_h_induced(t, 1, x1, 4) == want);
  CHECK(act_h_induced(t, 1, InducedState::pure({}, w0), 4) == h1_top * InducedState::pure({}, w0));

  InducedState x11 = InducedState::pure({1, 1}, w0);
  QScalar c = QScalar(0) - QScalar(q_int(4)) / QScalar(2);
  InducedState want2;
  want2.add({1, 3}, e, c * (QScalar(1) + q(-2)));
  want2.add({2, 2}, e, c * (q(-2) - QScalar(1)));
  want2.add({1, 1}, e, t.act_h(2, w0).coeff(e));
  CHECK(act_h_induced(t, 2, x11, 4) == want2);
  CHECK_THROWS_AS(act_h_induced(t, 2, x11, 3), std::out_of_range);
}

TEST_CASE("h_1 and h_2 commute on the induced module") {
  TModule t(psi_of(0, -1), 4);
  for (auto& w : std::vector<PBWWord>{{}, {1}, {2}, {1, 1}, {1, 2}})
    for (auto& J : {SubsetIndex::of_depths({}), SubsetIndex::of_depths({0}), SubsetIndex::of_depths({1}),
                    SubsetIndex::of_depths({0, 2})}) {
      InducedState v = InducedState::pure(w, TState::basis(J));
      CHECK(act_h_induced(t, 1, act_h_induced(t, 2, v, 8), 8) == act_h_induced(t, 2, act_h_induced(t, 1, v, 8), 8));
    }
}

TEST_CASE("eigenvectors live in 1 (x) T") {
  TModule t(psi_of(0, -1), 4);
  auto rep = eigenvector_location_check(t, 4, 1, Window{-6, 0}, {1});
  CHECK(rep.ok());
  CHECK(rep.sectors > 0);
  for (int d = 1; d <= 5; ++d) CHECK(eigenvector_location_check(t, d, 2, Window{-4, 0}, {1, 2}).ok());
  auto vac = eigenvector_location_check(t, 1, 0, Window{-6, 0}, {1});
  CHECK(vac.ok());
  CHECK(vac.sectors == 0);

  // 1 (x) w_J are eigenvectors
  CHECK(induced_eigenvalue(t, 1, InducedState::pure({}, TState::basis(SubsetIndex::of_depths({0}))), 4).has_value());
  // x_1 (x) w_empty - c 1 (x) w_{0} never is
  for (int c : {1, -1, 3}) {
    InducedState v = InducedState::pure({1}, TState::basis(SubsetIndex())) +
                     QScalar(-c) * InducedState::pure({}, TState::basis(SubsetIndex::of_depths({0})));
    CHECK_FALSE(induced_eigenvalue(t, 1, v, 4).has_value());
  }
}

TEST_CASE("induced q-character matches T") {
  TModule t(psi_of(0, -1), 5);
  Region reg{{-8, 0}, 2};
  CHECK(induced_qchar(t, 2, reg.window, 2, 5) == qchar_T(t.psi(), reg));
  TModule mixed(y_of(-1) * psi_of(-4, -1), 4);
  Region reg2{{-6, 0}, 2};
  CHECK(induced_qchar(mixed, 2, reg2.window, 2, 4) == qchar_T(mixed.psi(), reg2));
}
