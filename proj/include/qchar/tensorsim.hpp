#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qchar/linalg.hpp"
#include "qchar/lweights.hpp"
#include "qchar/qseries.hpp"

namespace qchar {

struct SymbolicField {
  using T = QScalar;
  T from(const QScalar& x) const { return x; }
};

// q specialized to an exact rational q0.
struct RationalField {
  Rational q0 = 2;
  using T = Rational;
  T from(const QScalar& x) const { return x.specialize(q0); }
};

// (k+1)-dimensional evaluation module with Y-string Y_s Y_{s-2} ... Y_{s-2(k-1)}.
// Basis v_0 (top) .. v_k; e1 v_j = [k-j+1] v_{j-1}, e0 v_j = q^{s-k+3} [j+1] v_{j+1}.
struct EvalModule {
  int k = 1;
  int s = -1;
  bool normalized = false;
  Matrix<QScalar> e1, e0, k1;

  size_t dim() const { return static_cast<size_t>(k + 1); }
  LWeight top_lweight() const;
};

EvalModule make_eval_module(int k, int s, bool normalized = false);

// Operator that maps weight level L to level L + shift, stored blockwise.
template <class T>
struct BlockOp {
  int shift = 0;
  std::vector<Matrix<T>> blocks;  // blocks[L]: level L -> level L + shift
};

struct RelationReport {
  bool ok = true;
  std::vector<std::string> failures;
  int checked = 0;
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

template <class F>
class TensorModule {
 public:
  using T = typename F::T;
  using Tuple = std::vector<int>;

  TensorModule(std::vector<EvalModule> factors, F field = F{}, size_t max_dim = 4096);

  const std::vector<EvalModule>& factors() const { return factors_; }
  const F& field() const { return field_; }
  int max_level() const { return static_cast<int>(basis_.size()) - 1; }
  size_t dim() const { return dim_; }
  size_t block_dim(int level) const;
  const std::vector<Tuple>& basis(int level) const { return basis_.at(level); }
  std::pair<int, size_t> locate(const Tuple& t) const;
  LWeight top_lweight() const;

  const BlockOp<T>& e1() const { return e1_; }
  const BlockOp<T>& e0() const { return e0_; }
  const BlockOp<T>& k1() const { return k1_; }

  // Builds x_m^+ (m <= mmax), x_m^- and phi_m (m <= max(rmax, mmax)), h_r (r <= rmax).
  void derive(int mmax, int rmax);
  int derived_mmax() const { return static_cast<int>(xplus_.size()) - 1; }
  int derived_rmax() const { return static_cast<int>(h_.size()) - 1; }
  const BlockOp<T>& xplus(int m) const { return xplus_.at(m); }
  const BlockOp<T>& xminus(int m) const { return xminus_.at(m); }  // m >= 1
  const BlockOp<T>& phi(int m) const { return phi_.at(m); }
  const BlockOp<T>& h(int r) const { return h_.at(r); }  // r >= 1

  // Defining relations of the Borel subalgebra on the constructed matrices.
  RelationReport check_defining_relations() const;
  // Drinfeld relations among the derived generators.
  RelationReport check_drinfeld_relations() const;

  // Joint generalized eigenspaces of phi_1..phi_rmax matched to candidate l-weights.
  std::vector<std::pair<LWeight, int>> lweight_decomposition(int rmax, bool force_general = false);
  bool last_decomposition_triangular() const { return last_triangular_; }

  nlohmann::json dump(const BlockOp<T>& op) const;

 private:
  T qp(int n) const { return field_.from(QScalar::q_pow(n)); }
  BlockOp<T> zero_op(int shift) const;
  BlockOp<T> mul(const BlockOp<T>& a, const BlockOp<T>& b) const;
  BlockOp<T> comm(const BlockOp<T>& a, const BlockOp<T>& b) const;
  BlockOp<T> lin(const T& a, const BlockOp<T>& x, const T& b, const BlockOp<T>& y) const;
  BlockOp<T> scale(const T& a, const BlockOp<T>& x) const;
  bool equal(const BlockOp<T>& a, const BlockOp<T>& b) const;
  std::vector<LWeight> candidates(int level) const;

  std::vector<EvalModule> factors_;
  F field_;
  size_t dim_ = 0;
  std::vector<std::vector<Tuple>> basis_;
  std::map<Tuple, std::pair<int, size_t>> index_;
  BlockOp<T> e1_, e0_, k1_, kinv_;
  std::vector<BlockOp<T>> xplus_, xminus_, phi_, h_;
  bool last_triangular_ = false;
};

extern template class TensorModule<SymbolicField>;
extern template class TensorModule<RationalField>;

using SymbolicTensor = TensorModule<SymbolicField>;

// Factors L(~Y_{q^{-1}}) x ... x L(~Y_{q^{-2N+1}}).
std::vector<EvalModule> tilde_s_factors(int n);

// Runs the decomposition at two rational points and requires identical results.
std::vector<std::pair<LWeight, int>> lweight_decomposition_specialized(const std::vector<EvalModule>& factors,
                                                                       int rmax, const Rational& q0a,
                                                                       const Rational& q0b);

// Number of l-weights per A^{-1}-monomial relative to the top, as a q-character series.
QCharSeries lweights_to_series(const std::vector<std::pair<LWeight, int>>& lw, const LWeight& top,
                               const Region& region);

}  // namespace qchar
