#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchar/lweights.hpp"
#include "qchar/qseries.hpp"
#include "qchar/tensorsim.hpp"
#include "qchar/ymonomials.hpp"

namespace qchar {

// Finite combination of basis vectors v_J.
struct TState {
  std::map<SubsetIndex, QScalar> coeffs;

  static TState basis(const SubsetIndex& J);
  void add(const SubsetIndex& J, const QScalar& c);
  QScalar coeff(const SubsetIndex& J) const;
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const TState&, const TState&) = default;
  friend TState operator+(const TState& a, const TState& b);
  friend TState operator*(const QScalar& c, const TState& a);
  std::string str() const;
  nlohmann::json to_json() const;
};

// h_r eigenvalue of an l-weight: coefficient of z^r in log(psi(z) q^{-wt}) / (q - q^{-1}).
QScalar lweight_h_eigenvalue(const LWeight& psi, int r);

// The asymptotic module T_Psi for a negative l-weight, realized depth by depth inside
// finite tensor products of normalized fundamental modules. Depth j carries slots(j)
// basis letters, each lowering by A^{-1}_{a_index(j)}.
class TModule {
 public:
  TModule(const LWeight& psi, int max_depth);

  const LWeight& psi() const { return psi_; }
  int max_depth() const { return max_depth_; }
  int slots(int j) const;
  int a_index(int j) const { return top_ - 2 * j; }
  int depth_of_index(int x) const { return (top_ - x) / 2; }
  // Normalized weight of the top vector, so that k1 v_J = q^{omega - 2|J|} v_J.
  const Rational& omega() const { return omega_; }

  // Every J with |J| = size and all depths <= jmax.
  std::vector<SubsetIndex> basis(int size, int jmax) const;
  LWeight lweight_of(const SubsetIndex& J) const;

  TState act_k(const TState& v, bool normalized = true) const;
  TState act_xplus(int m, const TState& v, int extra_depth = 0) const;
  TState act_h(int r, const TState& v, int extra_depth = 0) const;
  // Eigenvalue of h_r on the top vector of the factors deeper than i0.
  QScalar tail_scalar(int r, int i0) const;

 private:
  void check(const SubsetIndex& J) const;
  SymbolicTensor& tensor(int i0, int mmax, int rmax) const;
  std::vector<int> tuple_of(const SubsetIndex& J, int i0) const;
  SubsetIndex index_of(const std::vector<int>& t, int i0) const;
  template <class Op>
  TState act_via(const TState& v, int extra_depth, Op&& op) const;

  LWeight psi_;
  int max_depth_;
  int top_ = 0;
  Rational omega_;
  std::map<int, int> extra_slots_;  // depth -> slots from the Y-string
  std::map<int, int> pole_slots_;   // depth -> slots contributed by poles at or above it
  int stable_depth_ = 0;            // slots(j) constant for j >= stable_depth_
  mutable std::map<int, std::unique_ptr<SymbolicTensor>> cache_;
};

struct TriangularityReport {
  int checked = 0;
  std::vector<std::string> violations;
  int conv_literal_violations = 0;  // K outside the literal interval hull of J
  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

// J with |J| = size whose letters all sit inside the window (and within the module's depth).
std::vector<SubsetIndex> truncated_basis(const TModule& t, int size, const Window& window);

// All J with |J| <= max_size inside the depth range of the window, r <= rmax.
TriangularityReport triangularity_report(const TModule& t, int max_size, const Window& window, int rmax);

struct LWeightBasisEntry {
  TState w;
  LWeight lweight;
  std::vector<QScalar> eigenvalues;  // h_1 .. h_rmax
};

// Unitriangular eigenbasis w_J in v_J + span{v_K : K before J}; throws if h_r is not diagonalizable
// or an eigenvalue disagrees with the expected l-weight.
std::map<SubsetIndex, LWeightBasisEntry> lweight_basis(const TModule& t, int max_size, const Window& window,
                                                       int rmax);
nlohmann::json lweight_basis_json(const std::map<SubsetIndex, LWeightBasisEntry>& b);

// q-character of T_Psi relative to its top, by enumeration of index sets.
QCharSeries qchar_T(const LWeight& psi, const Region& region);

// Coefficients of v_{k}, k = 0..n, in x_1^- v_empty computed in the first n+1 factors.
std::vector<QScalar> xminus_divergence_witness(int n);

}  // namespace qchar
