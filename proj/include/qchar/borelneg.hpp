#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qchar/asymstd.hpp"

namespace qchar {

// x[m1] x[m2] ... x[ms]; normal-ordered when nondecreasing.
using PBWWord = std::vector<int>;

int word_degree(const PBWWord& w);
std::string word_str(const PBWWord& w);
bool is_normal(const PBWWord& w);

struct BorelNegElement {
  std::map<PBWWord, QScalar> terms;

  void add(const PBWWord& w, const QScalar& c);
  friend bool operator==(const BorelNegElement&, const BorelNegElement&) = default;
  std::string str() const;
};

enum class RewriteStrategy { Leftmost, Rightmost, Random };

// Normal ordering by x_a x_b = q^-2 x_b x_a + q^-2 x_{a-1} x_{b+1} - x_{b+1} x_{a-1} for a > b.
BorelNegElement pbw_normalize(const PBWWord& w, RewriteStrategy s = RewriteStrategy::Leftmost,
                              std::uint64_t seed = 0, std::size_t step_budget = 1000000);
BorelNegElement pbw_normalize(const BorelNegElement& e);

// Normal-ordered words of degree n, i.e. partitions of n in nondecreasing form.
std::vector<PBWWord> normal_words(int n);
long graded_dimension(int n);

struct OracleReport {
  bool ok = true;
  std::vector<std::string> failures;
  nlohmann::json to_json() const;
};

// Degree <= d quotient of the free algebra on x_1..x_d by the exchange relations, as exact linear algebra.
OracleReport linear_oracle_check(int d, bool perturb = false);

struct InducedState {
  std::map<std::pair<PBWWord, SubsetIndex>, QScalar> terms;

  static InducedState pure(const PBWWord& w, const TState& u);
  void add(const PBWWord& w, const SubsetIndex& J, const QScalar& c);
  int max_degree() const;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const InducedState&, const InducedState&) = default;
  friend InducedState operator+(const InducedState& a, const InducedState& b);
  friend InducedState operator*(const QScalar& c, const InducedState& a);
  std::string str() const;
};

// h_r on U^-(b) (x) T; throws if a term would exceed PBW degree d_max.
InducedState act_h_induced(const TModule& t, int r, const InducedState& v, int d_max);
// Eigenvalue if h_r v is a multiple of v.
std::optional<QScalar> induced_eigenvalue(const TModule& t, int r, const InducedState& v, int d_max);

struct LocationReport {
  int sectors = 0;
  int eigenvalues_tested = 0;
  std::vector<std::string> failures;  // sectors with s >= 1 carrying an eigenvector
  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

// Every h_r eigenvector with PBW degree < d lies in 1 (x) T (T truncated to |J| <= max_size in the window).
LocationReport eigenvector_location_check(const TModule& t, int d, int max_size, const Window& window,
                                          const std::vector<int>& rset);

// q-character of the truncated induced module read off from the vectors 1 (x) w_J, each re-verified as an
// h_1..h_rmax eigenvector of U^-(b) (x) T at PBW truncation d.
QCharSeries induced_qchar(const TModule& t, int max_size, const Window& window, int rmax, int d);

}  // namespace qchar
