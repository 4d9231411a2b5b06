#include "qchar/borelneg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qchar {

int word_degree(const PBWWord& w) { return std::accumulate(w.begin(), w.end(), 0); }

std::string word_str(const PBWWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? " x[" : "x[") + std::to_string(w[i]) + "]";
  return s;
}

bool is_normal(const PBWWord& w) { return std::is_sorted(w.begin(), w.end()); }

void BorelNegElement::add(const PBWWord& w, const QScalar& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = terms.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (is_zero(it->second)) terms.erase(it);
}

std::string BorelNegElement::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (auto& [w, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ") " + word_str(w);
  }
  return s;
}

namespace {

// x_a x_b for a > b as a combination of pairs, with the self-overlap solved out.
std::vector<std::pair<std::pair<int, int>, QScalar>> exchange(int a, int b) {
  std::map<std::pair<int, int>, QScalar> rhs;
  QScalar qm2 = QScalar::q_pow(-2);
  rhs[{b, a}] += qm2;
  rhs[{a - 1, b + 1}] += qm2;
  rhs[{b + 1, a - 1}] += QScalar(-1);
  QScalar self(0);
  if (auto it = rhs.find({a, b}); it != rhs.end()) {
    self = it->second;
    rhs.erase(it);
  }
  QScalar scale = QScalar(1) / (QScalar(1) - self);
  std::vector<std::pair<std::pair<int, int>, QScalar>> out;
  for (auto& [p, c] : rhs)
    if (!is_zero(c)) out.emplace_back(p, c * scale);
  return out;
}

}  // namespace

BorelNegElement pbw_normalize(const PBWWord& w, RewriteStrategy s, std::uint64_t seed, std::size_t step_budget) {
  for (int m : w)
    if (m < 1) throw std::invalid_argument("PBW indices must be >= 1");
  std::mt19937_64 rng(seed);
  BorelNegElement out;
  std::map<PBWWord, QScalar> pending;
  pending[w] = QScalar(1);
  std::size_t steps = 0;
  while (!pending.empty()) {
    if (++steps > step_budget) throw std::runtime_error("normal ordering exceeded its step budget");
    auto node = pending.extract(pending.begin());
    const PBWWord& cur = node.key();
    const QScalar& c = node.mapped();
    std::vector<size_t> descents;
    for (size_t i = 0; i + 1 < cur.size(); ++i)
      if (cur[i] > cur[i + 1]) descents.push_back(i);
    if (descents.empty()) {
      out.add(cur, c);
      continue;
    }
    size_t i = descents.front();
    if (s == RewriteStrategy::Rightmost) i = descents.back();
    if (s == RewriteStrategy::Random) i = descents[std::uniform_int_distribution<size_t>(0, descents.size() - 1)(rng)];
    for (auto& [p, x] : exchange(cur[i], cur[i + 1])) {
      PBWWord nw = cur;
      nw[i] = p.first;
      nw[i + 1] = p.second;
      QScalar v = c * x;
      auto [it, fresh] = pending.emplace(std::move(nw), v);
      if (!fresh) {
        it->second += v;
        if (is_zero(it->second)) pending.erase(it);
      }
    }
  }
  return out;
}

BorelNegElement pbw_normalize(const BorelNegElement& e) {
  BorelNegElement out;
  for (auto& [w, c] : e.terms)
    for (auto& [w2, c2] : pbw_normalize(w).terms) out.add(w2, c * c2);
  return out;
}

std::vector<PBWWord> normal_words(int n) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<PBWWord> out;
  PBWWord cur;
  auto rec = [&](auto&& self, int left, int min_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = min_part; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, 1);
  return out;
}

long graded_dimension(int n) { return static_cast<long>(normal_words(n).size()); }

nlohmann::json OracleReport::to_json() const { return {{"ok", ok}, {"failures", failures}}; }

namespace {

std::vector<PBWWord> compositions(int n) {
  std::vector<PBWWord> out;
  PBWWord cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = 1; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

PBWWord concat(const PBWWord& a, const PBWWord& b, const PBWWord& c) {
  PBWWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

}  // namespace

OracleReport linear_oracle_check(int d, bool perturb) {
  if (d < 0 || d > 8) throw std::invalid_argument("oracle degree must be in [0, 8]");
  OracleReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  QScalar qm2 = QScalar::q_pow(-2);
  QScalar last = perturb ? QScalar(-1) : QScalar(1);
  std::vector<std::vector<PBWWord>> comps(d + 1);
  for (int n = 0; n <= d; ++n) comps[n] = compositions(n);

  for (int n = 0; n <= d; ++n) {
    std::map<PBWWord, size_t> col;
    for (auto& w : comps[n]) col.emplace(w, col.size());
    SparseEchelon<QScalar> ideal;
    // u * R(m,l) * v with R(m,l) = x_{m+1}x_l - q^-2 x_l x_{m+1} - q^-2 x_m x_{l+1} + x_{l+1}x_m
    for (int m = 1; m + 2 <= n; ++m)
      for (int l = 1; m + l + 1 <= n; ++l) {
        int rest = n - (m + l + 1);
        for (int du = 0; du <= rest; ++du)
          for (auto& u : comps[du])
            for (auto& v : comps[rest - du]) {
              SparseEchelon<QScalar>::Row row;
              auto put = [&](const PBWWord& mid, const QScalar& c) {
                size_t k = col.at(concat(u, mid, v));
                QScalar nv = row.count(k) ? QScalar(row[k] + c) : c;
                if (is_zero(nv))
                  row.erase(k);
                else
                  row[k] = nv;
              };
              put({m + 1, l}, QScalar(1));
              put({l, m + 1}, QScalar(0) - qm2);
              put({m, l + 1}, QScalar(0) - qm2);
              put({l + 1, m}, last);
              if (!row.empty()) ideal.add(row);
            }
      }
    long quotient = static_cast<long>(comps[n].size() - ideal.rank());
    if (quotient != graded_dimension(n))
      fail("degree " + std::to_string(n) + ": quotient dimension " + std::to_string(quotient) + ", partitions " +
           std::to_string(graded_dimension(n)));

    SparseEchelon<QScalar> with_normals = ideal;
    for (auto& w : normal_words(n))
      if (!with_normals.add({{col.at(w), QScalar(1)}}))
        fail("normal word " + word_str(w) + " is dependent modulo the relations");

    for (auto& w : comps[n]) {
      if (w.size() > 4) continue;
      SparseEchelon<QScalar>::Row diff{{col.at(w), QScalar(1)}};
      for (auto& [w2, c] : pbw_normalize(w).terms) {
        size_t k = col.at(w2);
        QScalar nv = diff.count(k) ? QScalar(diff[k] - c) : QScalar(QScalar(0) - c);
        if (is_zero(nv))
          diff.erase(k);
        else
          diff[k] = nv;
      }
      if (!ideal.contains(diff)) fail("w - nf(w) not in the relation ideal for " + word_str(w));
    }
  }
  return rep;
}

InducedState InducedState::pure(const PBWWord& w, const TState& u) {
  InducedState s;
  for (auto& [J, c] : u.coeffs) s.add(w, J, c);
  return s;
}

void InducedState::add(const PBWWord& w, const SubsetIndex& J, const QScalar& c) {
  if (qchar::is_zero(c)) return;
  auto [it, fresh] = terms.emplace(std::make_pair(w, J), c);
  if (fresh) return;
  it->second += c;
  if (qchar::is_zero(it->second)) terms.erase(it);
}

int InducedState::max_degree() const {
  int d = 0;
  for (auto& [k, c] : terms) d = std::max(d, word_degree(k.first));
  return d;
}

InducedState operator+(const InducedState& a, const InducedState& b) {
  InducedState s = a;
  for (auto& [k, c] : b.terms) s.add(k.first, k.second, c);
  return s;
}

InducedState operator*(const QScalar& c, const InducedState& a) {
  InducedState s;
  for (auto& [k, x] : a.terms) s.add(k.first, k.second, c * x);
  return s;
}

std::string InducedState::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ") " + word_str(k.first) + " (x) v" + k.second.str();
  }
  return s;
}

InducedState act_h_induced(const TModule& t, int r, const InducedState& v, int d_max) {
  if (r < 1) throw std::invalid_argument("h_r needs r >= 1");
  QScalar shift = QScalar(0) - QScalar(q_int(2 * r)) / QScalar(r);
  InducedState out;
  for (auto& [key, c] : v.terms) {
    const auto& [w, J] = key;
    if (!w.empty() && word_degree(w) + r > d_max)
      throw std::out_of_range("PBW degree " + std::to_string(word_degree(w) + r) + " exceeds truncation " +
                              std::to_string(d_max));
    for (size_t j = 0; j < w.size(); ++j) {
      PBWWord w2 = w;
      w2[j] += r;
      for (auto& [w3, c3] : pbw_normalize(w2).terms) out.add(w3, J, shift * c3 * c);
    }
    for (auto& [K, x] : t.act_h(r, TState::basis(J)).coeffs) out.add(w, K, c * x);
  }
  return out;
}

std::optional<QScalar> induced_eigenvalue(const TModule& t, int r, const InducedState& v, int d_max) {
  if (v.is_zero()) return std::nullopt;
  InducedState hv = act_h_induced(t, r, v, d_max);
  const auto& [key, c] = *v.terms.begin();
  auto it = hv.terms.find(key);
  QScalar lam = it == hv.terms.end() ? QScalar(0) : it->second / c;
  if (hv == lam * v) return lam;
  return std::nullopt;
}

nlohmann::json LocationReport::to_json() const {
  return {{"sectors", sectors}, {"eigenvalues_tested", eigenvalues_tested}, {"ok", ok()}, {"failures", failures}};
}

namespace {

template <class T>
size_t column_rank(const std::vector<std::map<size_t, T>>& cols) {
  SparseEchelon<T> e;
  for (auto& c : cols) e.add(c);
  return e.rank();
}

}  // namespace

LocationReport eigenvector_location_check(const TModule& t, int d, int max_size, const Window& window,
                                          const std::vector<int>& rset) {
  LocationReport rep;
  for (int r : rset) {
    if (r < 1) throw std::invalid_argument("h_r needs r >= 1");
    for (int n = 0; n <= max_size; ++n) {
      auto tb = truncated_basis(t, n, window);
      if (tb.empty()) continue;
      std::vector<QScalar> lambdas;
      for (auto& J : tb) {
        QScalar lam = t.act_h(r, TState::basis(J)).coeff(J);
        if (std::find(lambdas.begin(), lambdas.end(), lam) == lambdas.end()) lambdas.push_back(lam);
      }
      for (int s = 1; s < d; ++s) {
        // domain: words of length s and degree < d; images reach degree < d + r
        std::vector<std::pair<PBWWord, SubsetIndex>> dom;
        for (int e = s; e < d; ++e)
          for (auto& w : normal_words(e))
            if (static_cast<int>(w.size()) == s)
              for (auto& J : tb) dom.emplace_back(w, J);
        if (dom.empty()) continue;
        ++rep.sectors;
        std::map<std::pair<PBWWord, SubsetIndex>, size_t> rows;
        std::vector<InducedState> images;
        for (auto& [w, J] : dom) {
          InducedState img = act_h_induced(t, r, InducedState::pure(w, TState::basis(J)), d - 1 + r);
          for (auto& [k, c] : img.terms) rows.emplace(k, rows.size());
          images.push_back(std::move(img));
        }
        for (auto& k : dom) rows.emplace(k, rows.size());

        for (auto& lam : lambdas) {
          ++rep.eigenvalues_tested;
          std::vector<std::map<size_t, QScalar>> cols;
          for (size_t i = 0; i < dom.size(); ++i) {
            InducedState img = images[i];
            img.add(dom[i].first, dom[i].second, QScalar(0) - lam);
            std::map<size_t, QScalar> col;
            for (auto& [k, c] : img.terms) col[rows.at(k)] = c;
            cols.push_back(std::move(col));
          }
          // full column rank at a rational point implies it generically
          bool full = false;
          try {
            std::vector<std::map<size_t, Rational>> rc;
            for (auto& c : cols) {
              std::map<size_t, Rational> m;
              for (auto& [k, x] : c) {
                Rational y = x.specialize(Rational(2));
                if (sgn(y) != 0) m[k] = y;
              }
              rc.push_back(std::move(m));
            }
            full = column_rank(rc) == dom.size();
          } catch (const std::domain_error&) {
          }
          if (!full) full = column_rank(cols) == dom.size();
          if (!full)
            rep.failures.push_back("h_" + std::to_string(r) + " has an eigenvector with PBW length " +
                                   std::to_string(s) + " and |J| = " + std::to_string(n) + " for eigenvalue " +
                                   lam.str());
        }
      }
    }
  }
  return rep;
}

QCharSeries induced_qchar(const TModule& t, int max_size, const Window& window, int rmax, int d) {
  QCharSeries out(Region{window, max_size});
  for (auto& [J, e] : lweight_basis(t, max_size, window, rmax)) {
    InducedState v = InducedState::pure({}, e.w);
    for (int r = 1; r <= rmax; ++r) {
      auto lam = induced_eigenvalue(t, r, v, d);
      if (!lam || *lam != e.eigenvalues[r - 1])
        throw std::runtime_error("1 (x) w" + J.str() + " is not an h_" + std::to_string(r) + " eigenvector");
    }
    auto exps = a_inverse_exponents(e.lweight, t.psi());
    if (!exps) throw std::runtime_error("l-weight of w" + J.str() + " is not below the top");
    out.add(AMonomial::from_map(*exps), 1);
  }
  return out;
}

}  // namespace qchar
