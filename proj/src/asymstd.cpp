#include "qchar/asymstd.hpp"

#include <algorithm>
#include <stdexcept>

namespace qchar {

TState TState::basis(const SubsetIndex& J) {
  TState s;
  s.coeffs[J] = QScalar(1);
  return s;
}

void TState::add(const SubsetIndex& J, const QScalar& c) {
  if (qchar::is_zero(c)) return;
  auto it = coeffs.find(J);
  if (it == coeffs.end()) {
    coeffs.emplace(J, c);
    return;
  }
  it->second += c;
  if (qchar::is_zero(it->second)) coeffs.erase(it);
}

QScalar TState::coeff(const SubsetIndex& J) const {
  auto it = coeffs.find(J);
  return it == coeffs.end() ? QScalar(0) : it->second;
}

TState operator+(const TState& a, const TState& b) {
  TState s = a;
  for (auto& [J, c] : b.coeffs) s.add(J, c);
  return s;
}

TState operator*(const QScalar& c, const TState& a) {
  TState s;
  for (auto& [J, x] : a.coeffs) s.add(J, c * x);
  return s;
}

std::string TState::str() const {
  if (coeffs.empty()) return "0";
  std::string s;
  for (auto& [J, c] : coeffs) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ") v" + J.str();
  }
  return s;
}

nlohmann::json TState::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto& [J, c] : coeffs) j.push_back({{"index", J.str()}, {"coeff", c.str()}});
  return j;
}

QScalar lweight_h_eigenvalue(const LWeight& psi, int r) {
  if (r < 1) throw std::invalid_argument("h_r needs r >= 1");
  QScalar s(0);
  for (auto& [x, m] : psi.factors()) s += QScalar(-m) * QScalar::q_pow(x * r);
  return s / (QScalar(r) * (QScalar::q_pow(1) - QScalar::q_pow(-1)));
}

TModule::TModule(const LWeight& psi, int max_depth) : psi_(psi), max_depth_(max_depth), omega_(psi.wt()) {
  if (max_depth < 0) throw std::invalid_argument("max depth must be nonnegative");
  NegFactorization f = factor_negative(psi);
  std::vector<std::pair<int, int>> y_slots;  // A-index, count
  for (auto& [key, e] : f.ystring.entries()) y_slots.emplace_back(key.second + 1, e);
  bool any = false;
  auto see = [&](int x) {
    if (x % 2 != 0) throw std::domain_error("l-weight has odd pole or root indices: " + psi.str());
    top_ = any ? std::max(top_, x) : x;
    any = true;
  };
  for (auto& [x, e] : y_slots) see(x);
  for (auto& [r, b] : f.psis) see(r);
  for (auto& [x, e] : y_slots) {
    extra_slots_[depth_of_index(x)] += e;
    stable_depth_ = std::max(stable_depth_, depth_of_index(x) + 1);
  }
  for (auto& [r, b] : f.psis) {
    pole_slots_[depth_of_index(r)] += b;
    stable_depth_ = std::max(stable_depth_, depth_of_index(r) + 1);
  }
}

int TModule::slots(int j) const {
  if (j < 0) return 0;
  int n = 0;
  auto it = extra_slots_.find(j);
  if (it != extra_slots_.end()) n += it->second;
  for (auto& [d, b] : pole_slots_)
    if (d <= j) n += b;
  return n;
}

std::vector<SubsetIndex> TModule::basis(int size, int jmax) const {
  std::vector<SubsetIndex::Elem> letters;
  for (int j = 0; j <= jmax; ++j)
    for (int k = 1; k <= slots(j); ++k) letters.emplace_back(j, k);
  std::vector<SubsetIndex> out;
  std::vector<SubsetIndex::Elem> cur;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.emplace_back(cur);
      return;
    }
    for (size_t i = from; i < letters.size(); ++i) {
      cur.push_back(letters[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

LWeight TModule::lweight_of(const SubsetIndex& J) const {
  check(J);
  LWeight p = psi_;
  for (auto& [j, k] : J.elems()) p *= a_of(a_index(j)).inverse();
  return p;
}

void TModule::check(const SubsetIndex& J) const {
  for (auto& [j, k] : J.elems())
    if (k > slots(j)) throw std::out_of_range("index element " + J.str() + " has no such slot");
}

SymbolicTensor& TModule::tensor(int i0, int mmax, int rmax) const {
  auto it = cache_.find(i0);
  if (it == cache_.end()) {
    std::vector<EvalModule> fs;
    for (int j = 0; j <= i0; ++j)
      for (int k = 0; k < slots(j); ++k) fs.push_back(make_eval_module(1, a_index(j) - 1, true));
    it = cache_.emplace(i0, std::make_unique<SymbolicTensor>(fs)).first;
  }
  SymbolicTensor& t = *it->second;
  int have_m = t.derived_mmax(), have_r = t.derived_rmax();
  if (have_m < mmax || have_r < rmax) t.derive(std::max(have_m, mmax), std::max({have_r, rmax, 1}));
  return t;
}

std::vector<int> TModule::tuple_of(const SubsetIndex& J, int i0) const {
  std::vector<int> offset(i0 + 2, 0);
  for (int j = 0; j <= i0; ++j) offset[j + 1] = offset[j] + slots(j);
  std::vector<int> t(offset[i0 + 1], 0);
  for (auto& [j, k] : J.elems()) t.at(offset[j] + k - 1) = 1;
  return t;
}

SubsetIndex TModule::index_of(const std::vector<int>& t, int i0) const {
  std::vector<SubsetIndex::Elem> e;
  size_t p = 0;
  for (int j = 0; j <= i0; ++j)
    for (int k = 1; k <= slots(j); ++k, ++p)
      if (t[p]) e.emplace_back(j, k);
  return SubsetIndex(std::move(e));
}

template <class Op>
TState TModule::act_via(const TState& v, int extra_depth, Op&& op) const {
  TState out;
  for (auto& [J, c] : v.coeffs) {
    check(J);
    int i0 = std::max(J.max_depth(), 0) + extra_depth;
    if (i0 > max_depth_) throw std::out_of_range("truncation too small for " + J.str());
    op(J, c, i0, out);
  }
  return out;
}

TState TModule::act_k(const TState& v, bool normalized) const {
  if (!normalized && omega_.get_den() != 1) throw std::domain_error("non-integral weight has no q-power");
  int w = normalized ? 0 : static_cast<int>(omega_.get_num().get_si());
  TState out;
  for (auto& [J, c] : v.coeffs) out.add(J, c * QScalar::q_pow(w - 2 * static_cast<int>(J.size())));
  return out;
}

TState TModule::act_xplus(int m, const TState& v, int extra_depth) const {
  if (m < 0) throw std::invalid_argument("x_m^+ needs m >= 0");
  return act_via(v, extra_depth, [&](const SubsetIndex& J, const QScalar& c, int i0, TState& out) {
    if (J.empty()) return;
    SymbolicTensor& t = tensor(i0, m, 1);
    auto [L, col] = t.locate(tuple_of(J, i0));
    const auto& blk = t.xplus(m).blocks[L];
    for (size_t i = 0; i < blk.rows(); ++i)
      if (!is_zero(blk(i, col))) out.add(index_of(t.basis(L - 1)[i], i0), c * blk(i, col));
  });
}

TState TModule::act_h(int r, const TState& v, int extra_depth) const {
  if (r < 1) throw std::invalid_argument("h_r needs r >= 1");
  return act_via(v, extra_depth, [&](const SubsetIndex& J, const QScalar& c, int i0, TState& out) {
    SymbolicTensor& t = tensor(i0, 0, r);
    auto [L, col] = t.locate(tuple_of(J, i0));
    const auto& blk = t.h(r).blocks[L];
    for (size_t i = 0; i < blk.rows(); ++i)
      if (!is_zero(blk(i, col))) out.add(index_of(t.basis(L)[i], i0), c * blk(i, col));
    out.add(J, c * tail_scalar(r, i0));
  });
}

QScalar TModule::tail_scalar(int r, int i0) const {
  // a fundamental factor with spectral exponent s contributes q^{sr} [r] / r
  QScalar qr = QScalar(q_int(r)) / QScalar(r);
  QScalar s(0);
  int j = i0 + 1;
  for (; j < stable_depth_; ++j)
    if (slots(j)) s += QScalar(slots(j)) * QScalar::q_pow((a_index(j) - 1) * r) * qr;
  int b = slots(j);
  if (b) {
    QScalar ratio = QScalar(1) - QScalar::q_pow(-2 * r);
    s += QScalar(b) * QScalar::q_pow((a_index(j) - 1) * r) * qr / ratio;
  }
  return s;
}

nlohmann::json TriangularityReport::to_json() const {
  return {{"checked", checked},
          {"ok", ok()},
          {"violations", violations},
          {"conv_literal_violations", conv_literal_violations}};
}

namespace {

int window_jmax(const TModule& t, const Window& w) {
  int j = t.depth_of_index(w.rmin);
  if ((t.a_index(0) - w.rmin) % 2 != 0) j = t.depth_of_index(w.rmin + 1);
  return std::min(j, t.max_depth());
}

bool in_window(const TModule& t, const SubsetIndex& J, const Window& w) {
  for (auto& [j, k] : J.elems())
    if (!w.contains(t.a_index(j))) return false;
  return true;
}

}  // namespace

std::vector<SubsetIndex> truncated_basis(const TModule& t, int size, const Window& window) {
  std::vector<SubsetIndex> out;
  for (auto& J : t.basis(size, window_jmax(t, window)))
    if (in_window(t, J, window)) out.push_back(J);
  return out;
}

TriangularityReport triangularity_report(const TModule& t, int max_size, const Window& window, int rmax) {
  TriangularityReport rep;
  for (int size = 0; size <= max_size; ++size)
    for (auto& J : truncated_basis(t, size, window)) {
      LWeight lw = t.lweight_of(J);
      for (int r = 1; r <= rmax; ++r) {
        ++rep.checked;
        TState out = t.act_h(r, TState::basis(J));
        std::string tag = "h_" + std::to_string(r) + " v" + J.str();
        if (!(out.coeff(J) == lweight_h_eigenvalue(lw, r))) rep.violations.push_back(tag + ": diagonal entry");
        for (auto& [K, c] : out.coeffs) {
          if (K == J) continue;
          bool ok = K.size() == J.size() && K < J && K.max_depth() <= J.max_depth();
          if (!ok) rep.violations.push_back(tag + ": term v" + K.str());
          if (K.min_depth() < J.min_depth() || K.max_depth() > J.max_depth()) ++rep.conv_literal_violations;
        }
      }
    }
  return rep;
}

std::map<SubsetIndex, LWeightBasisEntry> lweight_basis(const TModule& t, int max_size, const Window& window,
                                                       int rmax) {
  std::map<SubsetIndex, LWeightBasisEntry> out;
  for (int size = 0; size <= max_size; ++size) {
    std::vector<SubsetIndex> block = truncated_basis(t, size, window);
    size_t n = block.size();
    std::map<SubsetIndex, size_t> pos;
    for (size_t i = 0; i < n; ++i) pos[block[i]] = i;

    std::vector<Matrix<QScalar>> H;
    for (int r = 1; r <= rmax; ++r) {
      Matrix<QScalar> m(n, n);
      for (size_t c = 0; c < n; ++c)
        for (auto& [K, x] : t.act_h(r, TState::basis(block[c])).coeffs) {
          auto it = pos.find(K);
          if (it == pos.end() || it->second > c)
            throw std::runtime_error("h_" + std::to_string(r) + " leaves the triangular span at v" + block[c].str());
          m(it->second, c) = x;
        }
      H.push_back(std::move(m));
    }

    for (size_t c = 0; c < n; ++c) {
      const SubsetIndex& J = block[c];
      LWeightBasisEntry e;
      e.lweight = t.lweight_of(J);
      for (int r = 1; r <= rmax; ++r) {
        e.eigenvalues.push_back(H[r - 1](c, c));
        if (!(H[r - 1](c, c) == lweight_h_eigenvalue(e.lweight, r)))
          throw std::runtime_error("eigenvalue of h_" + std::to_string(r) + " on v" + J.str() +
                                   " differs from the expected l-weight");
      }
      e.w = TState::basis(J);
      // back substitution, dividing by the first h_r that separates the eigenvalues
      std::vector<QScalar> x(c + 1, QScalar(0));
      x[c] = QScalar(1);
      bool separated = true;
      for (size_t k = c; k-- > 0 && separated;) {
        int r = 0;
        while (r < rmax && H[r](k, k) == e.eigenvalues[r]) ++r;
        if (r == rmax) {
          separated = false;
          break;
        }
        QScalar acc(0);
        for (size_t k2 = k + 1; k2 <= c; ++k2)
          if (!is_zero(H[r](k, k2)) && !is_zero(x[k2])) acc += H[r](k, k2) * x[k2];
        x[k] = acc / (e.eigenvalues[r] - H[r](k, k));
      }
      if (!separated) {
        Matrix<QScalar> A(rmax * (c + 1), c);
        std::vector<QScalar> b(rmax * (c + 1));
        for (int r = 0; r < rmax; ++r)
          for (size_t i = 0; i <= c; ++i) {
            for (size_t k = 0; k < c; ++k) A(r * (c + 1) + i, k) = H[r](i, k) - (i == k ? e.eigenvalues[r] : QScalar(0));
            b[r * (c + 1) + i] = QScalar(0) - (H[r](i, c) - (i == c ? e.eigenvalues[r] : QScalar(0)));
          }
        auto sol = solve(A, b);
        if (!sol) throw std::runtime_error("h_r is not diagonalizable at v" + J.str());
        for (size_t k = 0; k < c; ++k) x[k] = (*sol)[k];
      }
      for (size_t k = 0; k < c; ++k) e.w.add(block[k], x[k]);
      for (int r = 1; r <= rmax; ++r)
        if (!(t.act_h(r, e.w) == e.eigenvalues[r - 1] * e.w))
          throw std::runtime_error("w" + J.str() + " is not an eigenvector");
      out.emplace(J, std::move(e));
    }
  }
  return out;
}

nlohmann::json lweight_basis_json(const std::map<SubsetIndex, LWeightBasisEntry>& b) {
  std::map<size_t, std::vector<const std::pair<const SubsetIndex, LWeightBasisEntry>*>> by_size;
  for (auto& kv : b) by_size[kv.first.size()].push_back(&kv);
  nlohmann::json blocks = nlohmann::json::array();
  for (auto& [size, entries] : by_size) {
    nlohmann::json basis = nlohmann::json::array(), matrix = nlohmann::json::array(), lw = nlohmann::json::array();
    for (auto* kv : entries) {
      basis.push_back(kv->first.str());
      lw.push_back(kv->second.lweight.str());
    }
    // row i, column j: coefficient of v_i in w_j
    for (auto* row : entries) {
      nlohmann::json r = nlohmann::json::array();
      for (auto* col : entries) r.push_back(col->second.w.coeff(row->first).str());
      matrix.push_back(r);
    }
    blocks.push_back({{"size", size}, {"basis", basis}, {"lweights", lw}, {"v_to_w", matrix}});
  }
  return blocks;
}

QCharSeries qchar_T(const LWeight& psi, const Region& region) {
  TModule t(psi, 0);
  QCharSeries s = QCharSeries::one(region);
  for (int j = 0; t.a_index(j) >= region.window.rmin; ++j) {
    int x = t.a_index(j), a = t.slots(j);
    if (a == 0 || !region.window.contains(x)) continue;
    // subsets of the a slots at this depth, grouped by size
    QCharSeries f(region);
    long binom = 1;
    for (int c = 0; c <= a && c <= region.degcap; ++c) {
      f.add(AMonomial::a_inv(x, c), binom);
      binom = binom * (a - c) / (c + 1);
    }
    s = truncated_product(s, f);
  }
  return s;
}

std::vector<QScalar> xminus_divergence_witness(int n) {
  if (n < 0) throw std::invalid_argument("witness size must be nonnegative");
  SymbolicTensor t(tilde_s_factors(n + 1));
  t.derive(0, 1);
  const auto& blk = t.xminus(1).blocks[0];
  std::vector<QScalar> out;
  for (int k = 0; k <= n; ++k) {
    std::vector<int> tup(n + 1, 0);
    tup[k] = 1;
    QScalar c = blk(t.locate(tup).second, 0);
    if (!(c == QScalar::q_pow(-2 * k - 1)))
      throw std::runtime_error("x_1^- v_empty coefficient at v{" + std::to_string(k) + "} is " + c.str());
    out.push_back(c);
  }
  return out;
}

}  // namespace qchar
