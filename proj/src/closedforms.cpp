#include "qchar/closedforms.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <stdexcept>

#include "qchar/kernels.hpp"

namespace qchar {

bool GappedTuple::valid() const {
  for (size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] < 1) return false;
    if (i > 0 && rs[i] <= rs[i - 1] + 1) return false;
  }
  return true;
}

std::string GappedTuple::str() const {
  std::string s = "(";
  for (size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + std::to_string(rs[i]);
  return s + ")";
}

QCharSeries fundamental_qchar(int r, const Region& region) {
  if (r % 2 == 0) throw std::invalid_argument("fundamental index must be odd");
  QCharSeries s = QCharSeries::one(region);
  s.add(AMonomial::a_inv(r + 1), 1);
  return s;
}

QCharSeries standard_qchar(const std::vector<int>& ys, const Region& region) {
  QCharSeries s = QCharSeries::one(region);
  for (int y : ys) s = truncated_product(s, fundamental_qchar(y, region));
  return s;
}

QCharSeries kr_qchar(int k, int rtop, const Region& region) {
  if (k < 0) throw std::invalid_argument("KR length must be nonnegative");
  if (rtop % 2 == 0) throw std::invalid_argument("KR top index must be odd");
  QCharSeries s = QCharSeries::one(region);
  AMonomial m;
  for (int j = 1; j <= k; ++j) {
    int r = rtop + 1 - 2 * (j - 1);
    if (!region.window.contains(r) || j > region.degcap) break;
    m = m * AMonomial::a_inv(r);
    s.add(m, 1);
  }
  return s;
}

QCharSeries prefund_limit_qchar(int r, const Region& region) {
  if (r % 2 != 0) throw std::invalid_argument("prefundamental index must be even");
  QCharSeries s = QCharSeries::one(region);
  for (int a = r; a >= region.window.rmin; a -= 2) {
    if (a > region.window.rmax) continue;
    QCharSeries f = QCharSeries::one(region);
    f.add(AMonomial::a_inv(a), 1);
    s = truncated_product(s, f);
  }
  return s;
}

QCharSeries prefund_chain_qchar(int r, const Region& region) {
  if (r % 2 != 0) throw std::invalid_argument("prefundamental index must be even");
  // a chain longer than the window never survives truncation
  int k = std::max(0, (r - region.window.rmin) / 2 + 1);
  return kr_qchar(k, r - 1, region);
}

QCharSeries chi_infinity(const LWeight& psi, const Region& region) {
  NegFactorization f = factor_negative(psi);
  QCharSeries s = QCharSeries::one(region);
  for (auto& [key, e] : f.ystring.entries()) {
    QCharSeries fund = fundamental_qchar(key.second, region);
    for (int i = 0; i < e; ++i) s = truncated_product(s, fund);
  }
  for (auto& [r, b] : f.psis) {
    QCharSeries lim = prefund_limit_qchar(r, region);
    for (int i = 0; i < b; ++i) s = truncated_product(s, lim);
  }
  return s;
}

QCharSeries simple_qchar_gapped(const GappedTuple& g, const Region& region) {
  if (!g.valid()) throw std::invalid_argument("gap condition violated: " + g.str());
  if (g.rs.empty()) return prefund_chain_qchar(0, region);
  const auto& r = g.rs;
  QCharSeries lead(region);
  AMonomial top;
  for (int x : r) top = top * AMonomial::a_inv(-2 * x);
  lead.add(top, 1);
  if (lead.size() == 0) return lead;
  QCharSeries s = truncated_product(lead, kr_qchar(r[0] - 1, -1, region));
  for (size_t i = 0; i + 1 < r.size(); ++i)
    s = truncated_product(s, kr_qchar(r[i + 1] - r[i] - 2, -2 * r[i] - 3, region));
  return truncated_product(s, prefund_chain_qchar(-2 * r.back() - 2, region));
}

std::vector<GappedTuple> gapped_tuples(int max_entry, int max_len) {
  std::vector<GappedTuple> out;
  GappedTuple cur;
  auto rec = [&](auto&& self, int next) -> void {
    out.push_back(cur);
    if (static_cast<int>(cur.rs.size()) >= max_len) return;
    for (int x = next; x <= max_entry; ++x) {
      cur.rs.push_back(x);
      self(self, x + 2);
      cur.rs.pop_back();
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json DecompositionReport::to_json() const {
  nlohmann::json j = {{"lhs_terms", lhs.size()},
                      {"rhs_terms", rhs.size()},
                      {"tuples", tuples},
                      {"equal", equal},
                      {"multiplicity_free", multiplicity_free},
                      {"window", {lhs.region().window.rmin, lhs.region().window.rmax}},
                      {"degcap", lhs.region().degcap}};
  if (first_mismatch)
    j["first_mismatch"] = {{"monomial", first_mismatch->str()}, {"lhs", mismatch_lhs}, {"rhs", mismatch_rhs}};
  else
    j["first_mismatch"] = nullptr;
  return j;
}

DecompositionReport verify_decomposition(const Region& region, const std::vector<GappedTuple>& drop) {
  DecompositionReport rep;
  rep.lhs = prefund_limit_qchar(0, region);
  int max_entry = region.window.rmin > 0 ? 0 : -region.window.rmin / 2;
  std::vector<GappedTuple> tuples;
  for (auto& g : gapped_tuples(max_entry, region.degcap))
    if (std::find(drop.begin(), drop.end(), g) == drop.end()) tuples.push_back(g);
  rep.tuples = tuples.size();

  std::vector<QCharSeries::Terms> parts(tuples.size());
  std::vector<char> summand_ok(tuples.size(), 1);
  const long n = static_cast<long>(tuples.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (kernels::default_backend() == kernels::Backend::Parallel)
  for (long i = 0; i < n; ++i) {
    try {
      QCharSeries s = simple_qchar_gapped(tuples[i], region);
      for (auto& [m, c] : s.terms())
        if (c != 1) summand_ok[i] = 0;
      parts[i] = s.terms();
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  rep.rhs = QCharSeries(region);
  for (auto& [m, c] : kernels::series_sum(parts, kernels::default_backend())) rep.rhs.add(m, c);

  rep.equal = rep.lhs == rep.rhs;
  rep.multiplicity_free = std::all_of(summand_ok.begin(), summand_ok.end(), [](char c) { return c != 0; });
  for (auto* s : {&rep.lhs, &rep.rhs})
    for (auto& [m, c] : s->terms())
      if (c != 1) rep.multiplicity_free = false;
  if (!rep.equal) {
    // first monomial in series order where the two sides differ
    std::optional<AMonomial> best;
    for (auto* s : {&rep.lhs, &rep.rhs})
      for (auto& [m, c] : s->terms())
        if (rep.lhs.coefficient(m) != rep.rhs.coefficient(m) && (!best || m < *best)) {
          best = m;
          break;
        }
    rep.first_mismatch = best;
    rep.mismatch_lhs = rep.lhs.coefficient(*best);
    rep.mismatch_rhs = rep.rhs.coefficient(*best);
  }
  return rep;
}

bool qchar_multiplicativity_check(const LWeight& psi1, const LWeight& psi2, const Region& region) {
  return chi_infinity(psi1 * psi2, region) ==
         truncated_product(chi_infinity(psi1, region), chi_infinity(psi2, region));
}

namespace {

LWeight random_negative(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> r(-(depth - 1), 1), n(0, 3), b(1, 2), w(-4, 4);
  LWeight p = LWeight::weight_only(Rational(w(rng), 2));
  int k = n(rng);
  for (int i = 0; i < k; ++i) p *= y_of(2 * r(rng) - 1);
  k = n(rng);
  for (int i = 0; i < k; ++i) p *= psi_of(2 * r(rng), -1).pow(b(rng));
  return p;
}

// prod A^{-c} on indices 0..-2(depth-1); with a small chance of one raising factor
LWeight random_a_product(std::mt19937_64& rng, int depth, bool allow_raise) {
  std::uniform_int_distribution<int> idx(0, depth - 1), n(0, 4), coin(0, 9);
  LWeight p;
  int k = n(rng);
  for (int i = 0; i < k; ++i) p *= a_of(-2 * idx(rng)).inverse();
  if (allow_raise && coin(rng) == 0) p *= a_of(-2 * idx(rng));
  return p;
}

}  // namespace

LWeight random_negative_lweight(std::uint64_t seed, int depth) {
  std::mt19937_64 rng(seed);
  return random_negative(rng, depth);
}

std::vector<OrderSample> sample_order_triples(std::uint64_t seed, int count, int depth) {
  if (depth < 1) throw std::invalid_argument("sampling depth must be positive");
  std::mt19937_64 rng(seed);
  std::vector<OrderSample> out;
  for (int i = 0; i < count; ++i) {
    OrderSample s;
    s.psi1 = random_negative(rng, depth);
    s.psi2 = random_negative(rng, depth);
    s.psi = s.psi1 * random_a_product(rng, depth, true);
    s.psi_prime = s.psi * s.psi2 * random_a_product(rng, depth, true);
    out.push_back(std::move(s));
  }
  return out;
}

OrderReport order_compatibility_check(const std::vector<OrderSample>& samples) {
  OrderReport rep;
  for (auto& s : samples) {
    ++rep.samples;
    if (!lweight_leq(s.psi, s.psi1) || !lweight_leq(s.psi_prime, s.psi * s.psi2)) continue;
    ++rep.premise_held;
    if (!lweight_leq(s.psi_prime, s.psi1 * s.psi2)) rep.ok = false;
  }
  return rep;
}

}  // namespace qchar
