#include "qchar/ymonomials.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qchar/config.hpp"
#include "qchar/linalg.hpp"

namespace qchar {

void CartanData::validate() const {
  int n = rank();
  if (n == 0 || static_cast<int>(D.size()) != n) throw std::invalid_argument("Cartan data shape");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(C[i].size()) != n) throw std::invalid_argument("Cartan matrix not square");
    if (C[i][i] != 2) throw std::invalid_argument("Cartan diagonal must be 2");
    if (D[i] <= 0) throw std::invalid_argument("symmetrizer must be positive");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (C[i][j] > 0 || C[i][j] < -3) throw std::invalid_argument("Cartan off-diagonal out of range");
      if (D[i] * C[i][j] != D[j] * C[j][i]) throw std::invalid_argument("DC not symmetric");
    }
  }
}

CartanData CartanData::A1() { return {{{2}}, {1}}; }
CartanData CartanData::A2() { return {{{2, -1}, {-1, 2}}, {1, 1}}; }
CartanData CartanData::B2() { return {{{2, -1}, {-2, 2}}, {2, 1}}; }
CartanData CartanData::G2() { return {{{2, -1}, {-3, 2}}, {3, 1}}; }

YMonomial YMonomial::y(int node, int r, int e) {
  check_spectral(r);
  check_multiplicity(e);
  YMonomial m;
  if (e != 0) m.e_[{node, r}] = e;
  return m;
}

int YMonomial::exponent(int node, int r) const {
  auto it = e_.find({node, r});
  return it == e_.end() ? 0 : it->second;
}

long YMonomial::degree() const {
  long d = 0;
  for (auto& [k, e] : e_) d += e;
  return d;
}

bool YMonomial::is_dominant() const {
  return std::all_of(e_.begin(), e_.end(), [](auto& kv) { return kv.second > 0; });
}

YMonomial YMonomial::inverse() const {
  YMonomial m = *this;
  for (auto& [k, e] : m.e_) e = -e;
  return m;
}

YMonomial& YMonomial::operator*=(const YMonomial& o) {
  for (auto& [k, e] : o.e_) {
    long v = static_cast<long>(exponent(k.first, k.second)) + e;
    check_multiplicity(v);
    if (v == 0)
      e_.erase(k);
    else
      e_[k] = static_cast<int>(v);
  }
  return *this;
}

YMonomial YMonomial::pow(int n) const {
  YMonomial m;
  for (auto& [k, e] : e_) {
    long v = static_cast<long>(e) * n;
    check_multiplicity(v);
    if (v != 0) m.e_[k] = static_cast<int>(v);
  }
  return m;
}

std::string YMonomial::str() const {
  if (e_.empty()) return "1";
  std::string s;
  for (auto& [k, e] : e_) {
    if (!s.empty()) s += " * ";
    s += "Y[" + std::to_string(k.first) + "," + std::to_string(k.second) + "]";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

namespace {

void check_node(int i, const CartanData& cd) {
  if (i < 1 || i > cd.rank()) throw std::out_of_range("unknown node index " + std::to_string(i));
}

YMonomial a_monomial_unchecked(int i, int r, const CartanData& cd) {
  int di = cd.d(i);
  YMonomial m = YMonomial::y(i, r - di) * YMonomial::y(i, r + di);
  for (int j = 1; j <= cd.rank(); ++j) {
    if (j == i) continue;
    switch (cd.c(j, i)) {
      case 0:
        break;
      case -1:
        m *= YMonomial::y(j, r, -1);
        break;
      case -2:
        m *= YMonomial::y(j, r - 1, -1) * YMonomial::y(j, r + 1, -1);
        break;
      case -3:
        m *= YMonomial::y(j, r - 2, -1) * YMonomial::y(j, r, -1) * YMonomial::y(j, r + 2, -1);
        break;
      default:
        throw std::invalid_argument("Cartan entry out of range");
    }
  }
  return m;
}

}  // namespace

YMonomial a_monomial(int i, int r, const CartanData& cd) {
  check_node(i, cd);
  if (cd.rank() == 1 && (r % 2 != 0)) throw std::invalid_argument("type A1 A-index must be even");
  return a_monomial_unchecked(i, r, cd);
}

std::vector<Rational> weight(const YMonomial& m, const CartanData& cd) {
  std::vector<Rational> w(cd.rank(), Rational(0));
  for (auto& [k, e] : m.entries()) {
    check_node(k.first, cd);
    w[k.first - 1] += e;
  }
  return w;
}

std::vector<Rational> root_weight(int i, const CartanData& cd) {
  check_node(i, cd);
  std::vector<Rational> w(cd.rank());
  for (int j = 1; j <= cd.rank(); ++j) w[j - 1] = cd.c(j, i);
  return w;
}

bool nakajima_leq(const YMonomial& m, const YMonomial& m2, const CartanData& cd) {
  YMonomial z = m * m2.inverse();
  if (z.is_one()) return true;
  int lo = z.entries().begin()->first.second, hi = lo;
  for (auto& [k, e] : z.entries()) {
    check_node(k.first, cd);
    lo = std::min(lo, k.second);
    hi = std::max(hi, k.second);
  }
  // z = prod A_{j,b}^{-n_{j,b}}: unknowns n over a margin wide enough for every Cartan type.
  std::vector<std::pair<int, int>> unknowns;
  for (int j = 1; j <= cd.rank(); ++j)
    for (int b = lo - 3; b <= hi + 3; ++b) unknowns.emplace_back(j, b);
  std::vector<YMonomial> cols;
  std::set<YMonomial::Key> keys;
  for (auto& [j, b] : unknowns) {
    cols.push_back(a_monomial_unchecked(j, b, cd));
    for (auto& [k, e] : cols.back().entries()) keys.insert(k);
  }
  for (auto& [k, e] : z.entries())
    if (!keys.count(k)) return false;
  std::vector<YMonomial::Key> rows(keys.begin(), keys.end());
  Matrix<Rational> a(rows.size(), cols.size());
  std::vector<Rational> rhs(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < cols.size(); ++c) a(r, c) = cols[c].exponent(rows[r].first, rows[r].second);
    rhs[r] = -z.exponent(rows[r].first, rows[r].second);
  }
  auto sol = solve(a, rhs);
  if (!sol) return false;
  // the A-monomials are independent, so the solution is unique
  for (auto& x : *sol)
    if (x.get_den() != 1 || sgn(x) < 0) return false;
  return true;
}

YMonomial parse_ymonomial(const std::string& text, const CartanData& cd) {
  TextCursor cur(text);
  YMonomial m;
  if (cur.eat('1')) {
    if (!cur.at_end()) cur.fail("trailing input");
    return m;
  }
  do {
    std::string name = cur.word();
    if (name != "Y" && name != "A") cur.fail("expected Y or A");
    cur.expect('[');
    long i = cur.integer();
    cur.expect(',');
    long r = cur.integer();
    cur.expect(']');
    long e = 1;
    if (cur.eat('^')) e = cur.integer();
    check_spectral(static_cast<int>(r));
    check_multiplicity(e);
    check_node(static_cast<int>(i), cd);
    if (name == "Y")
      m *= YMonomial::y(static_cast<int>(i), static_cast<int>(r), static_cast<int>(e));
    else
      m *= a_monomial(static_cast<int>(i), static_cast<int>(r), cd).pow(static_cast<int>(e));
  } while (cur.eat('*'));
  if (!cur.at_end()) cur.fail("trailing input");
  return m;
}

SubsetIndex::SubsetIndex(std::vector<Elem> elems) : e_(std::move(elems)) {
  std::sort(e_.begin(), e_.end());
  if (std::adjacent_find(e_.begin(), e_.end()) != e_.end()) throw std::invalid_argument("repeated element in index set");
  for (auto& [j, k] : e_)
    if (j < 0 || k < 1) throw std::invalid_argument("index element out of range");
}

SubsetIndex SubsetIndex::of_depths(const std::vector<int>& depths) {
  std::vector<Elem> v;
  for (int j : depths) v.emplace_back(j, 1);
  return SubsetIndex(std::move(v));
}

bool SubsetIndex::contains(const Elem& x) const { return std::binary_search(e_.begin(), e_.end(), x); }

bool operator<(const SubsetIndex& a, const SubsetIndex& b) {
  if (a.e_.size() != b.e_.size()) return a.e_.size() < b.e_.size();
  return a.e_ < b.e_;
}

std::string SubsetIndex::str() const {
  bool simple = std::all_of(e_.begin(), e_.end(), [](auto& x) { return x.second == 1; });
  std::string s = "{";
  for (size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    if (simple)
      s += std::to_string(e_[i].first);
    else
      s += "(" + std::to_string(e_[i].first) + "," + std::to_string(e_[i].second) + ")";
  }
  return s + "}";
}

bool subset_leq(const SubsetIndex& J, const SubsetIndex& K) {
  if (J.size() != K.size()) throw std::invalid_argument("order only defined for equal cardinality");
  return J.elems() <= K.elems();
}

}  // namespace qchar
