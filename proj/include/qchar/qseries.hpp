#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qchar/config.hpp"
#include "qchar/lweights.hpp"
#include "qchar/ymonomials.hpp"

namespace qchar {

// Monomial prod A_{q^r}^{-e_r}, e_r > 0, r even. Stored as (r, e) with r descending.
class AMonomial {
 public:
  AMonomial() = default;
  static AMonomial a_inv(int r, int e = 1);
  static AMonomial from_map(const std::map<int, int>& exps);

  const std::vector<std::pair<int, int>>& entries() const { return e_; }
  int degree() const { return deg_; }
  int exponent(int r) const;
  bool is_one() const { return e_.empty(); }
  int min_index() const { return e_.back().first; }
  int max_index() const { return e_.front().first; }

  friend AMonomial operator*(const AMonomial& a, const AMonomial& b);
  friend bool operator==(const AMonomial& a, const AMonomial& b) { return a.e_ == b.e_; }
  // degree first, then lexicographic on index lists with larger indices first
  friend bool operator<(const AMonomial& a, const AMonomial& b);

  LWeight to_lweight() const;
  YMonomial to_ymonomial() const;
  std::string str() const;

 private:
  std::vector<std::pair<int, int>> e_;
  int deg_ = 0;
};

AMonomial parse_amonomial(const std::string& text);

// Sparse integer combination of A^{-1}-monomials inside a tracked region.
class QCharSeries {
 public:
  using Terms = std::map<AMonomial, long long>;

  explicit QCharSeries(Region region = {});
  static QCharSeries one(Region region);

  const Region& region() const { return region_; }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool tracks(const AMonomial& m) const;

  // Adds c * m; silently dropped if m is outside the region.
  void add(const AMonomial& m, long long c);
  // Throws std::out_of_range ("untracked region") outside the window/degcap.
  long long coefficient(const AMonomial& m) const;
  QCharSeries restricted(const Region& r) const;

  friend bool operator==(const QCharSeries& a, const QCharSeries& b) { return a.terms_ == b.terms_; }
  QCharSeries& operator+=(const QCharSeries& o);

  std::string str() const;  // one term per line, sorted
  nlohmann::json to_json() const;

 private:
  Region region_;
  Terms terms_;
};

Region intersect(const Region& a, const Region& b);
QCharSeries truncated_product(const QCharSeries& a, const QCharSeries& b);

struct Stabilization {
  int n_stable;
  QCharSeries series;
};

// Least N0 with gen(N0), gen(N0+1), gen(N0+2) equal on the region; throws std::runtime_error past n_max.
Stabilization stabilization_check(const std::function<QCharSeries(int)>& gen, const Region& region, int n_max = 64);

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace qchar
