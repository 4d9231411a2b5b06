#include "qchar/qscalar.hpp"

#include <algorithm>
#include <stdexcept>

namespace qchar {

QLaurent::QLaurent(long c) {
  if (c != 0) c_.push_back(Integer(c));
}

QLaurent::QLaurent(const Integer& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

QLaurent QLaurent::monomial(int exp, const Integer& c) {
  QLaurent p;
  if (sgn(c) != 0) {
    p.lo_ = exp;
    p.c_.push_back(c);
  }
  return p;
}

QLaurent QLaurent::from_terms(const std::vector<std::pair<int, Integer>>& terms) {
  QLaurent p;
  for (auto& [e, c] : terms) p += monomial(e, c);
  return p;
}

void QLaurent::trim() {
  size_t first = 0;
  while (first < c_.size() && sgn(c_[first]) == 0) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  size_t last = c_.size();
  while (sgn(c_[last - 1]) == 0) --last;
  if (first > 0 || last < c_.size()) {
    c_ = std::vector<Integer>(c_.begin() + first, c_.begin() + last);
    lo_ += static_cast<int>(first);
  }
}

bool QLaurent::is_one() const { return c_.size() == 1 && lo_ == 0 && c_[0] == 1; }
bool QLaurent::is_constant() const { return c_.empty() || (c_.size() == 1 && lo_ == 0); }

Integer QLaurent::coeff(int e) const {
  if (c_.empty() || e < lo_ || e > high()) return 0;
  return c_[e - lo_];
}

std::vector<std::pair<int, Integer>> QLaurent::terms() const {
  std::vector<std::pair<int, Integer>> out;
  for (size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) out.emplace_back(lo_ + static_cast<int>(i), c_[i]);
  return out;
}

QLaurent QLaurent::shifted(int n) const {
  QLaurent p = *this;
  if (!p.c_.empty()) p.lo_ += n;
  return p;
}

QLaurent QLaurent::operator-() const {
  QLaurent p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(high(), o.high());
  if (lo < lo_ || hi > high()) {
    std::vector<Integer> nc(hi - lo + 1);
    for (size_t i = 0; i < c_.size(); ++i) nc[lo_ - lo + i] = c_[i];
    c_ = std::move(nc);
    lo_ = lo;
  }
  for (size_t i = 0; i < o.c_.size(); ++i) c_[o.lo_ - lo_ + i] += o.c_[i];
  trim();
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) { return *this += -o; }

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent p;
  if (a.c_.empty() || b.c_.empty()) return p;
  p.lo_ = a.lo_ + b.lo_;
  p.c_.assign(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
  }
  p.trim();
  return p;
}

QLaurent& QLaurent::operator*=(const QLaurent& o) { return *this = *this * o; }

Integer QLaurent::content() const {
  Integer g = 0;
  for (auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

QLaurent QLaurent::div_integer(const Integer& d) const {
  QLaurent p = *this;
  for (auto& c : p.c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  return p;
}

Rational QLaurent::eval(const Rational& q0) const {
  if (c_.empty()) return 0;
  if (sgn(q0) == 0 && lo_ < 0) throw std::domain_error("negative power of q at q = 0");
  Rational acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * q0 + Rational(c_[i]);
  Rational base = 1;
  Rational f = lo_ >= 0 ? q0 : Rational(1) / q0;
  for (int k = 0; k < std::abs(lo_); ++k) base *= f;
  acc *= base;
  acc.canonicalize();
  return acc;
}

std::string QLaurent::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t i = c_.size(); i-- > 0;) {
    const Integer& c = c_[i];
    if (sgn(c) == 0) continue;
    int e = lo_ + static_cast<int>(i);
    Integer a = abs(c);
    if (s.empty())
      s += sgn(c) < 0 ? "-" : "";
    else
      s += sgn(c) < 0 ? " - " : " + ";
    bool unit = (a == 1);
    if (e == 0) {
      s += a.get_str();
      continue;
    }
    if (!unit) s += a.get_str() + "*";
    s += "q";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

nlohmann::json QLaurent::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [e, c] : terms()) arr.push_back(std::to_string(e) + ":" + c.get_str());
  return arr;
}

namespace {

// Polynomials here are QLaurent with low() >= 0, treated as ordinary polynomials.
QLaurent to_poly(const QLaurent& a) { return a.is_zero() ? a : a.shifted(-a.low()); }

QLaurent primitive_part(const QLaurent& a) {
  if (a.is_zero()) return a;
  Integer g = a.content();
  QLaurent p = g == 1 ? a : a.div_integer(g);
  if (sgn(p.leading()) < 0) p = -p;
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b
QLaurent pseudo_remainder(QLaurent a, const QLaurent& b) {
  int db = b.high();
  const Integer lb = b.leading();
  while (!a.is_zero() && a.high() >= db) {
    Integer la = a.leading();
    int shift = a.high() - db;
    a = a * QLaurent(lb) - b.shifted(shift) * QLaurent(la);
  }
  return a;
}

}  // namespace

std::optional<QLaurent> divide_exact(const QLaurent& a, const QLaurent& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return QLaurent();
  if (b.is_monomial()) {
    QLaurent q;
    Integer lb = b.leading();
    for (auto& [e, c] : a.terms()) {
      if (!mpz_divisible_p(c.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
      q += QLaurent::monomial(e - b.low(), Integer(c / lb));
    }
    return q;
  }
  QLaurent r = to_poly(a), d = to_poly(b);
  int shift = a.low() - b.low();
  QLaurent quot;
  const Integer ld = d.leading();
  while (!r.is_zero() && r.high() >= d.high()) {
    Integer lr = r.leading();
    if (!mpz_divisible_p(lr.get_mpz_t(), ld.get_mpz_t())) return std::nullopt;
    QLaurent t = QLaurent::monomial(r.high() - d.high(), Integer(lr / ld));
    quot += t;
    r -= t * d;
  }
  if (!r.is_zero()) return std::nullopt;
  return quot.shifted(shift);
}

QLaurent gcd(const QLaurent& a, const QLaurent& b) {
  if (a.is_zero() || b.is_zero()) {
    QLaurent p = to_poly(a.is_zero() ? b : a);
    return !p.is_zero() && sgn(p.leading()) < 0 ? -p : p;
  }
  Integer ca = a.content(), cb = b.content(), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  QLaurent x = primitive_part(to_poly(a)), y = primitive_part(to_poly(b));
  if (x.high() < y.high()) std::swap(x, y);
  while (!y.is_zero() && y.high() > 0) {
    QLaurent r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part(to_poly(r));
  }
  // y constant nonzero means coprime primitive parts
  QLaurent g = y.is_zero() ? x : QLaurent(1);
  return g * QLaurent(c);
}

QScalar::QScalar(const QLaurent& n, const QLaurent& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

QScalar::QScalar(const Rational& r) : num_(Integer(r.get_num())), den_(Integer(r.get_den())) {}

void QScalar::normalize() {
  if (num_.is_zero()) {
    den_ = QLaurent(1);
    return;
  }
  if (den_.low() != 0) {
    num_ = num_.shifted(-den_.low());
    den_ = den_.shifted(-den_.low());
  }
  if (sgn(den_.leading()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_.is_one()) return;
  if (den_.is_constant()) {
    Integer c = num_.content(), d = den_.leading(), g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (g != 1) {
      num_ = num_.div_integer(g);
      den_ = den_.div_integer(g);
    }
    return;
  }
  QLaurent g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
    if (den_.low() != 0) {
      num_ = num_.shifted(-den_.low());
      den_ = den_.shifted(-den_.low());
    }
  }
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar operator+(const QScalar& a, const QScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    QScalar r;
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    if (!r.den_.is_one()) r.normalize();
    return r;
  }
  return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }

QScalar operator*(const QScalar& a, const QScalar& b) {
  if (a.is_zero() || b.is_zero()) return QScalar();
  if (a.den_.is_one() && b.den_.is_one()) return QScalar(a.num_ * b.num_);
  return QScalar(a.num_ * b.num_, a.den_ * b.den_);
}

QScalar operator/(const QScalar& a, const QScalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return QScalar(a.num_ * b.den_, a.den_ * b.num_);
}

QScalar QScalar::pow(int n) const {
  if (n < 0) return (QScalar(1) / *this).pow(-n);
  QScalar r(1), b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

Rational QScalar::specialize(const Rational& q0) const {
  Rational d = den_.eval(q0);
  if (sgn(d) == 0) throw std::domain_error("pole at q = " + q0.get_str());
  Rational r = num_.eval(q0) / d;
  r.canonicalize();
  return r;
}

std::string QScalar::str() const {
  if (den_.is_one()) return num_.str();
  auto wrap = [](const QLaurent& p) {
    std::string s = p.str();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

nlohmann::json QScalar::to_json() const {
  if (den_.is_one()) return num_.to_json();
  return {{"num", num_.to_json()}, {"den", den_.to_json()}};
}

QLaurent q_pow_laurent(int n) { return QLaurent::monomial(n); }

QLaurent q_int(int m) {
  QLaurent p;
  int a = std::abs(m);
  for (int k = 0; k < a; ++k) p += QLaurent::monomial(a - 1 - 2 * k);
  return m < 0 ? -p : p;
}

QLaurent q_factorial(int m) {
  if (m < 0) throw std::invalid_argument("negative factorial");
  QLaurent p(1);
  for (int k = 2; k <= m; ++k) p *= q_int(k);
  return p;
}

QScalar q_binomial(int n, int k) {
  if (k < 0 || k > n) return QScalar();
  return QScalar(q_factorial(n), q_factorial(k) * q_factorial(n - k));
}

}  // namespace qchar
