#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchar/qscalar.hpp"
#include "qchar/ymonomials.hpp"

namespace qchar {

// psi(z) = q^wt * prod (1 - q^r z)^{m_r}; m_r > 0 for roots, m_r < 0 for poles.
class LWeight {
 public:
  LWeight() = default;
  static LWeight weight_only(const Rational& w);

  const Rational& wt() const { return wt_; }
  const std::map<int, int>& factors() const { return f_; }
  std::vector<int> roots() const;  // multiset, ascending
  std::vector<int> poles() const;
  int multiplicity(int r) const;
  bool is_trivial() const { return f_.empty() && sgn(wt_) == 0; }

  LWeight inverse() const;
  LWeight& operator*=(const LWeight& o);
  friend LWeight operator*(LWeight a, const LWeight& b) { return a *= b; }
  friend LWeight operator/(LWeight a, const LWeight& b) { return a *= b.inverse(); }
  LWeight pow(int n) const;
  friend bool operator==(const LWeight& a, const LWeight& b) { return a.wt_ == b.wt_ && a.f_ == b.f_; }
  friend bool operator<(const LWeight& a, const LWeight& b);

  // Canonical text: [w] * Psi[r]^e ...
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  friend LWeight psi_of(int r, int sign);
  Rational wt_ = 0;
  std::map<int, int> f_;
};

LWeight psi_of(int r, int sign);
LWeight y_of(int r);
// A_{q^r} = Y_{q^{r-1}} Y_{q^{r+1}}
LWeight a_of(int r);
LWeight normalize(const LWeight& psi);
// Node-1 Y-monomial as an l-weight.
LWeight lweight_of(const YMonomial& m);

struct NegFactorization {
  Rational omega = 0;
  YMonomial ystring;        // node 1, positive exponents
  std::map<int, int> psis;  // r -> b_r for Psi_{q^r}^{-b_r}
};

NegFactorization factor_negative(const LWeight& psi);
LWeight recombine(const NegFactorization& f);
bool is_negative(const LWeight& psi);
bool is_finite_dim_type(const LWeight& psi);

// First M+1 Taylor coefficients of psi(z); throws if q^wt is not a Laurent monomial.
std::vector<QScalar> series_coeffs(const LWeight& psi, int M);
// psi1 <= psi2 iff psi1 / psi2 is a product of A^{-1} with nonnegative multiplicities.
bool lweight_leq(const LWeight& psi1, const LWeight& psi2, const CartanData& cd = CartanData::A1());
// Multiplicities c_r >= 0 with psi1 / psi2 = prod A_r^{-c_r}, if they exist.
std::optional<std::map<int, int>> a_inverse_exponents(const LWeight& psi1, const LWeight& psi2);

// Parses `[w] * Y[r]^e * Psi[r]^e * A[r]^e`.
LWeight parse_lweight(const std::string& text);

}  // namespace qchar
