#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qchar/qscalar.hpp"

namespace qchar {

struct CartanData {
  std::vector<std::vector<int>> C;  // C[i-1][j-1] for nodes 1..n
  std::vector<int> D;

  int rank() const { return static_cast<int>(C.size()); }
  int c(int i, int j) const { return C.at(i - 1).at(j - 1); }
  int d(int i) const { return D.at(i - 1); }
  void validate() const;

  static CartanData A1();
  static CartanData A2();
  static CartanData B2();
  static CartanData G2();
};

// Monomial in Y_{i,q^r}: (node, r) -> nonzero exponent.
class YMonomial {
 public:
  using Key = std::pair<int, int>;

  YMonomial() = default;
  static YMonomial y(int node, int r, int e = 1);

  int exponent(int node, int r) const;
  const std::map<Key, int>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }
  long degree() const;  // sum of exponents
  bool is_dominant() const;

  YMonomial inverse() const;
  YMonomial& operator*=(const YMonomial& o);
  friend YMonomial operator*(YMonomial a, const YMonomial& b) { return a *= b; }
  YMonomial pow(int n) const;
  friend bool operator==(const YMonomial&, const YMonomial&) = default;
  friend auto operator<=>(const YMonomial& a, const YMonomial& b) { return a.e_ <=> b.e_; }

  std::string str() const;

 private:
  std::map<Key, int> e_;
};

YMonomial a_monomial(int i, int r, const CartanData& cd);
// Coefficients on fundamental weights omega_1..omega_n.
std::vector<Rational> weight(const YMonomial& m, const CartanData& cd);
// Coefficients of the simple root alpha_i on fundamental weights.
std::vector<Rational> root_weight(int i, const CartanData& cd);
bool nakajima_leq(const YMonomial& m, const YMonomial& m2, const CartanData& cd);

// Parses `Y[i,r]^e * A[i,r]^e`; A factors are expanded through a_monomial.
YMonomial parse_ymonomial(const std::string& text, const CartanData& cd);

// Index set J of the asymptotic module: pairs (depth j >= 0, slot k >= 1), kept sorted.
class SubsetIndex {
 public:
  using Elem = std::pair<int, int>;

  SubsetIndex() = default;
  SubsetIndex(std::vector<Elem> elems);
  static SubsetIndex of_depths(const std::vector<int>& depths);  // slot 1 each

  const std::vector<Elem>& elems() const { return e_; }
  size_t size() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  bool contains(const Elem& x) const;
  int max_depth() const { return e_.empty() ? -1 : e_.back().first; }
  int min_depth() const { return e_.empty() ? -1 : e_.front().first; }

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;
  friend bool operator<(const SubsetIndex& a, const SubsetIndex& b);  // size, then lex
  std::string str() const;

 private:
  std::vector<Elem> e_;
};

// J precedes-or-equals K lexicographically; throws std::invalid_argument if sizes differ.
bool subset_leq(const SubsetIndex& J, const SubsetIndex& K);

}  // namespace qchar
