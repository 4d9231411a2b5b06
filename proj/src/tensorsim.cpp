#include "qchar/tensorsim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qchar/kernels.hpp"

namespace qchar {

namespace {

std::string scalar_str(const QScalar& x) { return x.str(); }
std::string scalar_str(const Rational& x) { return x.get_str(); }

// positions of the tuple with multiplicity, ascending
std::vector<int> order_key(const std::vector<int>& t) {
  std::vector<int> k;
  for (size_t p = 0; p < t.size(); ++p)
    for (int i = 0; i < t[p]; ++i) k.push_back(static_cast<int>(p));
  return k;
}

template <class T>
bool is_upper(const Matrix<T>& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < i && j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class T>
bool is_lower(const Matrix<T>& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = i + 1; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

}  // namespace

LWeight EvalModule::top_lweight() const {
  LWeight p;
  for (int i = 0; i < k; ++i) p *= y_of(s - 2 * i);
  if (normalized) p *= LWeight::weight_only(-k);
  return p;
}

EvalModule make_eval_module(int k, int s, bool normalized) {
  if (k < 1) throw std::invalid_argument("evaluation module needs k >= 1");
  if (s % 2 == 0) throw std::invalid_argument("spectral parameter must be odd");
  check_spectral(s);
  check_spectral(s - 2 * (k - 1));
  EvalModule m;
  m.k = k;
  m.s = s;
  m.normalized = normalized;
  size_t n = m.dim();
  m.e1 = Matrix<QScalar>(n, n);
  m.e0 = Matrix<QScalar>(n, n);
  m.k1 = Matrix<QScalar>(n, n);
  int w0 = normalized ? 0 : k;
  QScalar c = QScalar::q_pow(s - k + 3);
  for (int j = 0; j <= k; ++j) {
    m.k1(j, j) = QScalar::q_pow(w0 - 2 * j);
    if (j >= 1) m.e1(j - 1, j) = QScalar(q_int(k - j + 1));
    if (j < k) m.e0(j + 1, j) = c * QScalar(q_int(j + 1));
  }
  return m;
}

std::vector<EvalModule> tilde_s_factors(int n) {
  std::vector<EvalModule> f;
  for (int i = 0; i < n; ++i) f.push_back(make_eval_module(1, -2 * i - 1, true));
  return f;
}

template <class F>
TensorModule<F>::TensorModule(std::vector<EvalModule> factors, F field, size_t max_dim)
    : factors_(std::move(factors)), field_(std::move(field)) {
  dim_ = 1;
  int top = 0;
  for (auto& f : factors_) {
    if (f.dim() == 0 || f.e1.rows() != f.dim() || f.e0.rows() != f.dim() || f.k1.rows() != f.dim())
      throw std::invalid_argument("malformed evaluation module");
    dim_ *= f.dim();
    if (dim_ > max_dim)
      throw std::overflow_error("tensor dimension exceeds bound " + std::to_string(max_dim));
    top += f.k;
  }

  basis_.assign(top + 1, {});
  std::vector<int> t(factors_.size(), 0);
  auto rec = [&](auto&& self, size_t p, int level) -> void {
    if (p == factors_.size()) {
      basis_[level].push_back(t);
      return;
    }
    for (int j = 0; j <= factors_[p].k; ++j) {
      t[p] = j;
      self(self, p + 1, level + j);
    }
    t[p] = 0;
  };
  rec(rec, 0, 0);
  for (int L = 0; L <= top; ++L) {
    auto& b = basis_[L];
    std::sort(b.begin(), b.end(), [](const Tuple& x, const Tuple& y) { return order_key(x) < order_key(y); });
    for (size_t i = 0; i < b.size(); ++i) index_[b[i]] = {L, i};
  }

  // factor entries in the working field
  std::vector<Matrix<T>> fe1, fe0, fk1, fk0;
  for (auto& f : factors_) {
    size_t n = f.dim();
    Matrix<T> a(n, n), b(n, n), c(n, n), d(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        a(i, j) = field_.from(f.e1(i, j));
        b(i, j) = field_.from(f.e0(i, j));
        c(i, j) = field_.from(f.k1(i, j));
      }
    for (size_t i = 0; i < n; ++i) {
      if (is_zero(c(i, i))) throw std::invalid_argument("k1 must be invertible");
      for (size_t j = 0; j < n; ++j)
        if (i != j && !is_zero(c(i, j))) throw std::invalid_argument("k1 must be diagonal");
      d(i, i) = T(1) / c(i, i);
    }
    fe1.push_back(std::move(a));
    fe0.push_back(std::move(b));
    fk1.push_back(std::move(c));
    fk0.push_back(std::move(d));
  }

  // e acts at position p with k on the earlier factors
  auto build = [&](int shift, const std::vector<Matrix<T>>& e, const std::vector<Matrix<T>>& kk) {
    BlockOp<T> op = zero_op(shift);
    for (int L = 0; L <= top; ++L) {
      int L2 = L + shift;
      if (L2 < 0 || L2 > top) continue;
      for (size_t col = 0; col < basis_[L].size(); ++col) {
        const Tuple& src = basis_[L][col];
        T pre(1);
        for (size_t p = 0; p < src.size(); ++p) {
          int j = src[p];
          for (int j2 = 0; j2 <= factors_[p].k; ++j2) {
            if (j2 - j != shift) continue;
            const T& x = e[p](j2, j);
            if (is_zero(x)) continue;
            Tuple dst = src;
            dst[p] = j2;
            size_t row = index_.at(dst).second;
            op.blocks[L](row, col) += pre * x;
          }
          pre *= kk[p](j, j);
        }
      }
    }
    return op;
  };
  e1_ = build(-1, fe1, fk1);
  e0_ = build(+1, fe0, fk0);

  k1_ = zero_op(0);
  kinv_ = zero_op(0);
  for (int L = 0; L <= top; ++L)
    for (size_t i = 0; i < basis_[L].size(); ++i) {
      T d(1);
      for (size_t p = 0; p < factors_.size(); ++p) {
        int j = basis_[L][i][p];
        d *= fk1[p](j, j);
      }
      k1_.blocks[L](i, i) = d;
      kinv_.blocks[L](i, i) = T(1) / d;
    }
}

template <class F>
size_t TensorModule<F>::block_dim(int level) const {
  if (level < 0 || level > max_level()) return 0;
  return basis_[level].size();
}

template <class F>
std::pair<int, size_t> TensorModule<F>::locate(const Tuple& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw std::out_of_range("basis tuple not in module");
  return it->second;
}

template <class F>
LWeight TensorModule<F>::top_lweight() const {
  LWeight p;
  for (auto& f : factors_) p *= f.top_lweight();
  return p;
}

template <class F>
BlockOp<typename F::T> TensorModule<F>::zero_op(int shift) const {
  BlockOp<T> op;
  op.shift = shift;
  for (int L = 0; L <= max_level(); ++L) op.blocks.emplace_back(block_dim(L + shift), block_dim(L));
  return op;
}

template <class F>
BlockOp<typename F::T> TensorModule<F>::mul(const BlockOp<T>& a, const BlockOp<T>& b) const {
  BlockOp<T> c = zero_op(a.shift + b.shift);
  for (int L = 0; L <= max_level(); ++L) {
    int mid = L + b.shift;
    if (mid < 0 || mid > max_level() || c.blocks[L].rows() == 0 || c.blocks[L].cols() == 0) continue;
    c.blocks[L] = kernels::matmul(a.blocks[mid], b.blocks[L]);
  }
  return c;
}

template <class F>
BlockOp<typename F::T> TensorModule<F>::lin(const T& a, const BlockOp<T>& x, const T& b,
                                            const BlockOp<T>& y) const {
  if (x.shift != y.shift) throw std::invalid_argument("adding operators of different degree");
  BlockOp<T> z = zero_op(x.shift);
  for (size_t L = 0; L < z.blocks.size(); ++L) z.blocks[L] = a * x.blocks[L] + b * y.blocks[L];
  return z;
}

template <class F>
BlockOp<typename F::T> TensorModule<F>::scale(const T& a, const BlockOp<T>& x) const {
  BlockOp<T> z = x;
  for (auto& m : z.blocks) m = a * m;
  return z;
}

template <class F>
BlockOp<typename F::T> TensorModule<F>::comm(const BlockOp<T>& a, const BlockOp<T>& b) const {
  return lin(T(1), mul(a, b), T(-1), mul(b, a));
}

template <class F>
bool TensorModule<F>::equal(const BlockOp<T>& a, const BlockOp<T>& b) const {
  return a.shift == b.shift && a.blocks == b.blocks;
}

template <class F>
void TensorModule<F>::derive(int mmax, int rmax) {
  if (mmax < 0 || rmax < 1) throw std::invalid_argument("need mmax >= 0 and rmax >= 1");
  int M = std::max(mmax, rmax);
  T q2 = field_.from(QScalar(q_int(2)));
  T qq = qp(1) - qp(-1);

  xplus_.assign(1, e1_);
  xminus_.assign(2, zero_op(1));
  xminus_[1] = mul(k1_, e0_);
  BlockOp<T> h1 = mul(kinv_, comm(xplus_[0], xminus_[1]));
  for (int m = 0; m < mmax; ++m) xplus_.push_back(scale(T(1) / q2, comm(h1, xplus_[m])));
  for (int m = 1; m < M; ++m) xminus_.push_back(scale(T(-1) / q2, comm(h1, xminus_[m])));

  phi_.assign(1, k1_);
  for (int m = 1; m <= M; ++m) phi_.push_back(scale(qq, comm(xplus_[0], xminus_[m])));

  // exp(sum H_s z^s) = sum P_r z^r with P = k^{-1} phi and H = (q - q^{-1}) h
  std::vector<BlockOp<T>> P(rmax + 1), H(rmax + 1);
  for (int r = 1; r <= rmax; ++r) P[r] = mul(kinv_, phi_[r]);
  h_.assign(1, zero_op(0));
  for (int r = 1; r <= rmax; ++r) {
    BlockOp<T> acc = zero_op(0);
    for (int s = 1; s < r; ++s) acc = lin(T(1), acc, T(s), mul(H[s], P[r - s]));
    H[r] = lin(T(1), P[r], T(-1) / T(r), acc);
    h_.push_back(scale(T(1) / qq, H[r]));
  }
}

template <class F>
RelationReport TensorModule<F>::check_defining_relations() const {
  RelationReport rep;
  T q3 = field_.from(QScalar(q_int(3)));
  rep.expect(equal(mul(k1_, e1_), scale(qp(2), mul(e1_, k1_))), "k1 e1 k1^-1 = q^2 e1");
  rep.expect(equal(mul(k1_, e0_), scale(qp(-2), mul(e0_, k1_))), "k1 e0 k1^-1 = q^-2 e0");
  auto serre = [&](const BlockOp<T>& a, const BlockOp<T>& b) {
    BlockOp<T> a2 = mul(a, a), a3 = mul(a2, a);
    BlockOp<T> s = lin(T(1), mul(a3, b), T(0) - q3, mul(mul(a2, b), a));
    s = lin(T(1), s, q3, mul(mul(a, b), a2));
    s = lin(T(1), s, T(-1), mul(b, a3));
    for (auto& m : s.blocks)
      if (!m.is_zero()) return false;
    return true;
  };
  rep.expect(serre(e1_, e0_), "Serre relation (e1, e0)");
  rep.expect(serre(e0_, e1_), "Serre relation (e0, e1)");
  return rep;
}

template <class F>
RelationReport TensorModule<F>::check_drinfeld_relations() const {
  if (h_.empty()) throw std::logic_error("derive() has not been called");
  RelationReport rep;
  int mmax = derived_mmax(), rmax = derived_rmax();
  int M = static_cast<int>(xminus_.size()) - 1;
  T qq = qp(1) - qp(-1);
  auto tag = [](const std::string& s, int a, int b) {
    return s + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  for (int r = 1; r <= rmax; ++r)
    for (int s = r + 1; s <= rmax; ++s) {
      BlockOp<T> c = comm(h_[r], h_[s]);
      bool z = std::all_of(c.blocks.begin(), c.blocks.end(), [](auto& m) { return m.is_zero(); });
      rep.expect(z, tag("[h_r,h_s]=0 ", r, s));
    }
  for (int m = 0; m <= mmax; ++m)
    for (int l = 1; m + l <= M; ++l)
      rep.expect(equal(comm(xplus_[m], xminus_[l]), scale(T(1) / qq, phi_[m + l])), tag("[x+_m,x-_l]=phi ", m, l));
  for (int r = 1; r <= rmax; ++r) {
    T c = field_.from(QScalar(q_int(2 * r))) / T(r);
    for (int m = 0; m + r <= mmax; ++m)
      rep.expect(equal(comm(h_[r], xplus_[m]), scale(c, xplus_[m + r])), tag("[h_r,x+_m] ", r, m));
    for (int m = 1; m + r <= M; ++m)
      rep.expect(equal(comm(h_[r], xminus_[m]), scale(T(0) - c, xminus_[m + r])), tag("[h_r,x-_m] ", r, m));
  }
  for (int m = 1; m + 1 <= M; ++m)
    for (int l = 1; l + 1 <= M; ++l) {
      BlockOp<T> lhs = lin(T(1), mul(xminus_[m + 1], xminus_[l]), T(0) - qp(-2), mul(xminus_[l], xminus_[m + 1]));
      BlockOp<T> rhs = lin(qp(-2), mul(xminus_[m], xminus_[l + 1]), T(-1), mul(xminus_[l + 1], xminus_[m]));
      rep.expect(equal(lhs, rhs), tag("x- exchange ", m, l));
    }
  for (int m = 0; m + 1 <= mmax; ++m)
    for (int l = 0; l + 1 <= mmax; ++l) {
      BlockOp<T> lhs = lin(T(1), mul(xplus_[m + 1], xplus_[l]), T(0) - qp(2), mul(xplus_[l], xplus_[m + 1]));
      BlockOp<T> rhs = lin(qp(2), mul(xplus_[m], xplus_[l + 1]), T(-1), mul(xplus_[l + 1], xplus_[m]));
      rep.expect(equal(lhs, rhs), tag("x+ exchange ", m, l));
    }
  return rep;
}

template <class F>
std::vector<LWeight> TensorModule<F>::candidates(int level) const {
  std::set<int> idx;
  for (auto& f : factors_)
    for (int l = 0; l < f.k; ++l) idx.insert(f.s + 1 - 2 * l);
  std::vector<int> S(idx.begin(), idx.end());
  std::vector<LWeight> out;
  LWeight cur = top_lweight();
  auto rec = [&](auto&& self, size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (size_t i = from; i < S.size(); ++i) {
      LWeight save = cur;
      cur *= a_of(S[i]).inverse();
      self(self, i, left - 1);
      cur = save;
    }
  };
  rec(rec, 0, level);
  return out;
}

template <class F>
std::vector<std::pair<LWeight, int>> TensorModule<F>::lweight_decomposition(int rmax, bool force_general) {
  if (derived_rmax() < rmax || static_cast<int>(phi_.size()) - 1 < rmax) derive(std::max(derived_mmax(), 0), rmax);

  bool upper = true, lower = true;
  for (int m = 0; m <= rmax; ++m)
    for (auto& b : phi_[m].blocks) {
      upper = upper && is_upper(b);
      lower = lower && is_lower(b);
    }
  last_triangular_ = (upper || lower) && !force_general;

  std::map<LWeight, int> mult;
  for (int L = 0; L <= max_level(); ++L) {
    size_t n = block_dim(L);
    std::vector<std::pair<std::vector<T>, LWeight>> cands;
    for (auto& c : candidates(L)) {
      std::vector<T> v;
      for (auto& x : series_coeffs(c, rmax)) v.push_back(field_.from(x));
      cands.emplace_back(std::move(v), c);
    }
    auto matches = [&](const std::vector<T>& lam) {
      std::vector<const LWeight*> hits;
      for (auto& [v, c] : cands)
        if (v == lam) hits.push_back(&c);
      return hits;
    };

    if (last_triangular_) {
      for (size_t i = 0; i < n; ++i) {
        std::vector<T> lam;
        for (int m = 0; m <= rmax; ++m) lam.push_back(phi_[m].blocks[L](i, i));
        auto hits = matches(lam);
        if (hits.empty()) throw std::runtime_error("eigenvalue tuple matches no candidate l-weight at level " + std::to_string(L));
        std::set<LWeight> distinct;
        for (auto* h : hits) distinct.insert(*h);
        if (distinct.size() > 1)
          throw std::runtime_error("ambiguous l-weight at level " + std::to_string(L) + "; increase rmax");
        ++mult[*distinct.begin()];
      }
      continue;
    }

    // joint generalized eigenspaces: nullity of the stacked (phi_m - lambda_m)^n
    size_t found = 0;
    std::vector<std::vector<T>> seen;
    for (auto& [lam, c] : cands) {
      if (std::find(seen.begin(), seen.end(), lam) != seen.end()) continue;
      seen.push_back(lam);
      Matrix<T> stacked((rmax + 1) * n, n);
      for (int m = 0; m <= rmax; ++m) {
        Matrix<T> a = phi_[m].blocks[L] - Matrix<T>::identity(n, lam[m]);
        Matrix<T> p = matrix_power(a, static_cast<int>(n));
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) stacked(m * n + i, j) = p(i, j);
      }
      size_t nullity = n - rank(stacked);
      if (nullity == 0) continue;
      std::set<LWeight> distinct;
      for (auto* h : matches(lam)) distinct.insert(*h);
      if (distinct.size() > 1)
        throw std::runtime_error("ambiguous l-weight at level " + std::to_string(L) + "; increase rmax");
      mult[c] += static_cast<int>(nullity);
      found += nullity;
    }
    if (found != n) throw std::runtime_error("generalized eigenspaces do not span level " + std::to_string(L));
  }
  return {mult.begin(), mult.end()};
}

template <class F>
nlohmann::json TensorModule<F>::dump(const BlockOp<T>& op) const {
  nlohmann::json entries = nlohmann::json::array();
  for (int L = 0; L <= max_level(); ++L) {
    const auto& m = op.blocks[L];
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(i, j)))
          entries.push_back({{"row", basis_[L + op.shift][i]}, {"col", basis_[L][j]}, {"value", scalar_str(m(i, j))}});
  }
  return {{"shift", op.shift}, {"entries", entries}};
}

template class TensorModule<SymbolicField>;
template class TensorModule<RationalField>;

std::vector<std::pair<LWeight, int>> lweight_decomposition_specialized(const std::vector<EvalModule>& factors,
                                                                       int rmax, const Rational& q0a,
                                                                       const Rational& q0b) {
  TensorModule<RationalField> a(factors, RationalField{q0a}), b(factors, RationalField{q0b});
  auto da = a.lweight_decomposition(rmax), db = b.lweight_decomposition(rmax);
  if (da != db) throw std::runtime_error("specializations at two rational points disagree");
  return da;
}

QCharSeries lweights_to_series(const std::vector<std::pair<LWeight, int>>& lw, const LWeight& top,
                               const Region& region) {
  QCharSeries s(region);
  for (auto& [psi, n] : lw) {
    auto e = a_inverse_exponents(psi, top);
    if (!e) throw std::domain_error("l-weight is not below the top: " + psi.str());
    s.add(AMonomial::from_map(*e), n);
  }
  return s;
}

}  // namespace qchar
