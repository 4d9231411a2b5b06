#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qchar {

using Integer = mpz_class;
using Rational = mpq_class;

// Laurent polynomial in q with integer coefficients.
// Dense storage from exponent lo_; both ends are nonzero unless the polynomial is zero.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(long c);
  QLaurent(const Integer& c);

  static QLaurent monomial(int exp, const Integer& c = 1);
  static QLaurent from_terms(const std::vector<std::pair<int, Integer>>& terms);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return c_.size() == 1; }
  int low() const { return lo_; }
  int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  Integer coeff(int e) const;
  const Integer& leading() const { return c_.back(); }
  const Integer& trailing() const { return c_.front(); }
  std::vector<std::pair<int, Integer>> terms() const;

  QLaurent shifted(int n) const;
  QLaurent operator-() const;
  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator-=(const QLaurent& o);
  QLaurent& operator*=(const QLaurent& o);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }

  Integer content() const;
  QLaurent div_integer(const Integer& d) const;  // exact
  Rational eval(const Rational& q0) const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void trim();
  int lo_ = 0;
  std::vector<Integer> c_;
};

// Exact quotient in Z[q, q^-1], if it exists.
std::optional<QLaurent> divide_exact(const QLaurent& a, const QLaurent& b);
// gcd in Z[q, q^-1], normalized to lowest exponent 0 and positive leading coefficient.
QLaurent gcd(const QLaurent& a, const QLaurent& b);

// Element of Q(q), kept as num/den in lowest terms with den normalized.
class QScalar {
 public:
  QScalar() : den_(1) {}
  QScalar(long c) : num_(c), den_(1) {}
  QScalar(const QLaurent& p) : num_(p), den_(1) {}
  QScalar(const QLaurent& n, const QLaurent& d);
  QScalar(const Rational& r);

  static QScalar q_pow(int n) { return QScalar(QLaurent::monomial(n)); }

  const QLaurent& num() const { return num_; }
  const QLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_one(); }

  QScalar operator-() const;
  friend QScalar operator+(const QScalar& a, const QScalar& b);
  friend QScalar operator-(const QScalar& a, const QScalar& b);
  friend QScalar operator*(const QScalar& a, const QScalar& b);
  friend QScalar operator/(const QScalar& a, const QScalar& b);
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }
  friend bool operator==(const QScalar& a, const QScalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  QScalar pow(int n) const;
  // Value at q = q0; throws std::domain_error on a pole.
  Rational specialize(const Rational& q0) const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void normalize();
  QLaurent num_, den_;
};

QLaurent q_pow_laurent(int n);
// Symmetric quantum integer (q^m - q^-m)/(q - q^-1).
QLaurent q_int(int m);
QLaurent q_factorial(int m);
QScalar q_binomial(int n, int k);

inline bool is_zero(const QScalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

}  // namespace qchar
