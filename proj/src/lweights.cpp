#include "qchar/lweights.hpp"

#include <algorithm>
#include <stdexcept>

#include "qchar/config.hpp"

namespace qchar {

LWeight LWeight::weight_only(const Rational& w) {
  LWeight p;
  p.wt_ = w;
  p.wt_.canonicalize();
  return p;
}

std::vector<int> LWeight::roots() const {
  std::vector<int> v;
  for (auto& [r, m] : f_)
    for (int i = 0; i < m; ++i) v.push_back(r);
  return v;
}

std::vector<int> LWeight::poles() const {
  std::vector<int> v;
  for (auto& [r, m] : f_)
    for (int i = 0; i < -m; ++i) v.push_back(r);
  return v;
}

int LWeight::multiplicity(int r) const {
  auto it = f_.find(r);
  return it == f_.end() ? 0 : it->second;
}

LWeight LWeight::inverse() const {
  LWeight p = *this;
  p.wt_ = -p.wt_;
  for (auto& [r, m] : p.f_) m = -m;
  return p;
}

LWeight& LWeight::operator*=(const LWeight& o) {
  wt_ += o.wt_;
  for (auto& [r, m] : o.f_) {
    long v = static_cast<long>(multiplicity(r)) + m;
    check_multiplicity(v);
    if (v == 0)
      f_.erase(r);
    else
      f_[r] = static_cast<int>(v);
  }
  return *this;
}

LWeight LWeight::pow(int n) const {
  LWeight p;
  p.wt_ = wt_ * n;
  for (auto& [r, m] : f_) {
    long v = static_cast<long>(m) * n;
    check_multiplicity(v);
    if (v) p.f_[r] = static_cast<int>(v);
  }
  return p;
}

bool operator<(const LWeight& a, const LWeight& b) {
  if (a.wt_ != b.wt_) return a.wt_ < b.wt_;
  return a.f_ < b.f_;
}

std::string LWeight::str() const {
  if (is_trivial()) return "1";
  std::string s;
  if (sgn(wt_) != 0) s = "[" + wt_.get_str() + "]";
  for (auto& [r, m] : f_) {
    if (!s.empty()) s += " * ";
    s += "Psi[" + std::to_string(r) + "]";
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s;
}

nlohmann::json LWeight::to_json() const {
  nlohmann::json f = nlohmann::json::array();
  for (auto& [r, m] : f_) f.push_back({r, m});
  return {{"wt", wt_.get_str()}, {"factors", f}, {"text", str()}};
}

LWeight psi_of(int r, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  check_spectral(r);
  LWeight p;
  p.f_[r] = sign;
  return p;
}

LWeight y_of(int r) {
  if (r % 2 == 0) throw std::invalid_argument("Y index must be odd");
  return LWeight::weight_only(1) * psi_of(r - 1, 1) * psi_of(r + 1, -1);
}

LWeight a_of(int r) { return y_of(r - 1) * y_of(r + 1); }

LWeight normalize(const LWeight& psi) { return psi * LWeight::weight_only(-psi.wt()); }

LWeight lweight_of(const YMonomial& m) {
  LWeight p;
  for (auto& [k, e] : m.entries()) {
    if (k.first != 1) throw std::invalid_argument("only node 1 l-weights are supported");
    p *= y_of(k.second).pow(e);
  }
  return p;
}

NegFactorization factor_negative(const LWeight& psi) {
  NegFactorization out;
  std::map<int, int> poles;
  for (auto& [r, m] : psi.factors())
    if (m < 0) poles[r] = -m;
  std::vector<int> roots = psi.roots();
  long ycount = 0;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    int x = *it;
    // nearest available same-parity pole above x
    auto p = poles.upper_bound(x);
    while (p != poles.end() && (p->first - x) % 2 != 0) ++p;
    if (p == poles.end()) throw std::domain_error("not negative: unmatched root " + std::to_string(x));
    int top = p->first;
    if (--p->second == 0) poles.erase(p);
    for (int y = x + 1; y < top; y += 2) {
      out.ystring *= YMonomial::y(1, y);
      ++ycount;
    }
  }
  out.psis = poles;
  out.omega = psi.wt() - Rational(ycount);
  return out;
}

LWeight recombine(const NegFactorization& f) {
  LWeight p = LWeight::weight_only(f.omega);
  for (auto& [k, e] : f.ystring.entries()) p *= y_of(k.second).pow(e);
  for (auto& [r, b] : f.psis) p *= psi_of(r, -1).pow(b);
  return p;
}

bool is_negative(const LWeight& psi) {
  try {
    factor_negative(psi);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool is_finite_dim_type(const LWeight& psi) {
  try {
    return factor_negative(psi).psis.empty();
  } catch (const std::domain_error&) {
    return false;
  }
}

std::vector<QScalar> series_coeffs(const LWeight& psi, int M) {
  if (M < 0) throw std::invalid_argument("truncation order must be nonnegative");
  if (psi.wt().get_den() != 1) throw std::domain_error("q^wt is not a Laurent monomial for wt = " + psi.wt().get_str());
  std::vector<QLaurent> c(M + 1);
  c[0] = QLaurent::monomial(static_cast<int>(psi.wt().get_num().get_si()));
  for (auto& [r, m] : psi.factors()) {
    for (int t = 0; t < std::abs(m); ++t) {
      if (m > 0) {
        // times (1 - q^r z)
        for (int k = M; k >= 1; --k) c[k] -= c[k - 1].shifted(r);
      } else {
        // divide by (1 - q^r z)
        for (int k = 1; k <= M; ++k) c[k] += c[k - 1].shifted(r);
      }
    }
  }
  return {c.begin(), c.end()};
}

std::optional<std::map<int, int>> a_inverse_exponents(const LWeight& psi1, const LWeight& psi2) {
  LWeight z = psi1 / psi2;
  std::map<int, int> c;
  if (z.factors().empty()) {
    if (sgn(z.wt()) != 0) return std::nullopt;
    return c;
  }
  int lo = z.factors().begin()->first, hi = z.factors().rbegin()->first;
  // f(x) = c_{x-2} - c_{x+2}, solved from the top
  auto get = [&](int y) {
    auto it = c.find(y);
    return it == c.end() ? 0 : it->second;
  };
  for (int x = hi; x >= lo - 4; --x) {
    int v = z.multiplicity(x) + get(x + 2);
    if (v) c[x - 2] = v;
  }
  long total = 0;
  for (auto& [y, v] : c) {
    if (y < lo - 2 || v < 0) return std::nullopt;
    total += v;
  }
  if (z.wt() != Rational(-2 * total)) return std::nullopt;
  return c;
}

bool lweight_leq(const LWeight& psi1, const LWeight& psi2, const CartanData& cd) {
  if (cd.rank() != 1) throw std::invalid_argument("l-weight order implemented for type A1");
  return a_inverse_exponents(psi1, psi2).has_value();
}

LWeight parse_lweight(const std::string& text) {
  TextCursor cur(text);
  LWeight p;
  if (cur.eat('1')) {
    if (!cur.at_end()) cur.fail("trailing input");
    return p;
  }
  do {
    if (cur.eat('[')) {
      Rational w;
      std::string t = cur.rational_text();
      w.set_str(t, 10);
      if (w.get_den() == 0) cur.fail("zero denominator");
      w.canonicalize();
      cur.expect(']');
      p *= LWeight::weight_only(w);
      continue;
    }
    size_t at = cur.pos();
    std::string name = cur.word();
    if (name != "Y" && name != "Psi" && name != "A") throw ParseError("expected Y, Psi, A or [w]", at);
    cur.expect('[');
    long r = cur.integer();
    cur.expect(']');
    long e = 1;
    if (cur.eat('^')) e = cur.integer();
    check_spectral(static_cast<int>(r));
    check_multiplicity(e);
    int ri = static_cast<int>(r), ei = static_cast<int>(e);
    if (name == "Y") {
      if (ri % 2 == 0) throw ParseError("Y index must be odd", at);
      p *= y_of(ri).pow(ei);
    } else if (name == "A") {
      if (ri % 2 != 0) throw ParseError("A index must be even", at);
      p *= a_of(ri).pow(ei);
    } else {
      p *= psi_of(ri, 1).pow(ei);
    }
  } while (cur.eat('*'));
  if (!cur.at_end()) cur.fail("trailing input");
  return p;
}

}  // namespace qchar
