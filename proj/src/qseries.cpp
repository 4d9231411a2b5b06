#include "qchar/qseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "qchar/kernels.hpp"

namespace qchar {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("q-character coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("q-character coefficient overflow");
  return r;
}

AMonomial AMonomial::a_inv(int r, int e) {
  if (r % 2 != 0) throw std::invalid_argument("A index must be even");
  if (e < 0) throw std::invalid_argument("A^{-1} exponent must be nonnegative");
  check_spectral(r);
  check_multiplicity(e);
  AMonomial m;
  if (e > 0) {
    m.e_.emplace_back(r, e);
    m.deg_ = e;
  }
  return m;
}

AMonomial AMonomial::from_map(const std::map<int, int>& exps) {
  AMonomial m;
  for (auto& [r, e] : exps) m = m * a_inv(r, e);
  return m;
}

int AMonomial::exponent(int r) const {
  for (auto& [s, e] : e_)
    if (s == r) return e;
  return 0;
}

AMonomial operator*(const AMonomial& a, const AMonomial& b) {
  AMonomial m;
  m.e_.reserve(a.e_.size() + b.e_.size());
  size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first > b.e_[j].first)) {
      m.e_.push_back(a.e_[i++]);
    } else if (i == a.e_.size() || b.e_[j].first > a.e_[i].first) {
      m.e_.push_back(b.e_[j++]);
    } else {
      int e = a.e_[i].second + b.e_[j].second;
      check_multiplicity(e);
      m.e_.emplace_back(a.e_[i].first, e);
      ++i;
      ++j;
    }
  }
  m.deg_ = a.deg_ + b.deg_;
  return m;
}

bool operator<(const AMonomial& a, const AMonomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
  // walk the expanded index lists
  size_t i = 0, j = 0;
  int ia = 0, jb = 0;
  while (i < a.e_.size() && j < b.e_.size()) {
    int ra = a.e_[i].first, rb = b.e_[j].first;
    if (ra != rb) return ra > rb;
    int ca = a.e_[i].second - ia, cb = b.e_[j].second - jb;
    int step = std::min(ca, cb);
    ia += step;
    jb += step;
    if (ia == a.e_[i].second) {
      ++i;
      ia = 0;
    }
    if (jb == b.e_[j].second) {
      ++j;
      jb = 0;
    }
  }
  return false;
}

LWeight AMonomial::to_lweight() const {
  LWeight p;
  for (auto& [r, e] : e_) p *= a_of(r).pow(-e);
  return p;
}

YMonomial AMonomial::to_ymonomial() const {
  YMonomial m;
  auto cd = CartanData::A1();
  for (auto& [r, e] : e_) m *= a_monomial(1, r, cd).pow(-e);
  return m;
}

std::string AMonomial::str() const {
  if (e_.empty()) return "1";
  std::string s;
  for (auto& [r, e] : e_) {
    if (!s.empty()) s += " * ";
    s += "A[" + std::to_string(r) + "]^" + std::to_string(-e);
  }
  return s;
}

AMonomial parse_amonomial(const std::string& text) {
  TextCursor cur(text);
  AMonomial m;
  if (cur.eat('1')) {
    if (!cur.at_end()) cur.fail("trailing input");
    return m;
  }
  do {
    size_t at = cur.pos();
    if (cur.word() != "A") throw ParseError("expected A", at);
    cur.expect('[');
    long r = cur.integer();
    cur.expect(']');
    long e = 1;
    if (cur.eat('^')) e = cur.integer();
    if (e > 0) throw ParseError("A exponents must be negative", at);
    if (r % 2 != 0) throw ParseError("A index must be even", at);
    check_spectral(static_cast<int>(r));
    check_multiplicity(e);
    m = m * AMonomial::a_inv(static_cast<int>(r), static_cast<int>(-e));
  } while (cur.eat('*'));
  if (!cur.at_end()) cur.fail("trailing input");
  return m;
}

QCharSeries::QCharSeries(Region region) : region_(region) {
  if (region_.degcap < 0) throw std::invalid_argument("degree cap must be nonnegative");
  check_multiplicity(region_.degcap);
}

QCharSeries QCharSeries::one(Region region) {
  QCharSeries s(region);
  s.add(AMonomial(), 1);
  return s;
}

bool QCharSeries::tracks(const AMonomial& m) const {
  if (m.degree() > region_.degcap) return false;
  if (m.is_one()) return true;
  return region_.window.contains(m.min_index()) && region_.window.contains(m.max_index());
}

void QCharSeries::add(const AMonomial& m, long long c) {
  if (c == 0 || !tracks(m)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

long long QCharSeries::coefficient(const AMonomial& m) const {
  if (!tracks(m)) throw std::out_of_range("untracked region: " + m.str());
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

QCharSeries QCharSeries::restricted(const Region& r) const {
  QCharSeries s(intersect(region_, r));
  for (auto& [m, c] : terms_) s.add(m, c);
  return s;
}

QCharSeries& QCharSeries::operator+=(const QCharSeries& o) {
  for (auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

std::string QCharSeries::str() const {
  std::string s;
  for (auto& [m, c] : terms_) s += std::to_string(c) + "\t" + m.str() + "\n";
  return s;
}

nlohmann::json QCharSeries::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [m, c] : terms_) terms.push_back({{"monomial", m.str()}, {"degree", m.degree()}, {"coeff", c}});
  return {{"terms", terms},
          {"window", {region_.window.rmin, region_.window.rmax}},
          {"degcap", region_.degcap}};
}

Region intersect(const Region& a, const Region& b) {
  Region r;
  r.window.rmin = std::max(a.window.rmin, b.window.rmin);
  r.window.rmax = std::min(a.window.rmax, b.window.rmax);
  r.degcap = std::min(a.degcap, b.degcap);
  return r;
}

QCharSeries truncated_product(const QCharSeries& a, const QCharSeries& b) {
  QCharSeries out(intersect(a.region(), b.region()));
  auto prod = kernels::series_product(a.terms(), b.terms(), out.region().degcap, kernels::default_backend());
  for (auto& [m, c] : prod) out.add(m, c);
  return out;
}

Stabilization stabilization_check(const std::function<QCharSeries(int)>& gen, const Region& region, int n_max) {
  std::vector<QCharSeries> snaps;
  for (int n = 1; n <= n_max + 2; ++n) {
    snaps.push_back(gen(n).restricted(region));
    size_t k = snaps.size();
    if (k >= 3 && snaps[k - 1] == snaps[k - 2] && snaps[k - 2] == snaps[k - 3]) return {n - 2, snaps[k - 3]};
  }
  throw std::runtime_error("no stabilization up to N = " + std::to_string(n_max));
}

}  // namespace qchar
