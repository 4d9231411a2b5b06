#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qchar/lweights.hpp"
#include "qchar/qseries.hpp"

namespace qchar {

// 1 <= r_1 < ... < r_m with r_{i+1} > r_i + 1
struct GappedTuple {
  std::vector<int> rs;
  bool valid() const;
  std::string str() const;
  friend bool operator==(const GappedTuple&, const GappedTuple&) = default;
  friend auto operator<=>(const GappedTuple&, const GappedTuple&) = default;
};

QCharSeries fundamental_qchar(int r, const Region& region = {});
QCharSeries standard_qchar(const std::vector<int>& ys, const Region& region = {});
// Y-string Y_{rtop} Y_{rtop-2} ... Y_{rtop-2(k-1)}
QCharSeries kr_qchar(int k, int rtop, const Region& region = {});
// Subset sum over finite J of {0,1,...} of prod A^{-1}_{r-2j}
QCharSeries prefund_limit_qchar(int r, const Region& region);
// Chain sum over k >= 0 of prod_{l<k} A^{-1}_{r-2l}: the limit of kr_qchar(k, r-1)
QCharSeries prefund_chain_qchar(int r, const Region& region);
QCharSeries chi_infinity(const LWeight& psi, const Region& region);
// Normalized q-character of L(Psi_0^{-1} prod A^{-1}_{-2 r_i}) times its leading monomial.
QCharSeries simple_qchar_gapped(const GappedTuple& g, const Region& region);

// All gapped tuples with entries <= max_entry and length <= max_len, sorted.
std::vector<GappedTuple> gapped_tuples(int max_entry, int max_len);

struct DecompositionReport {
  QCharSeries lhs, rhs;
  size_t tuples = 0;
  bool equal = false;
  bool multiplicity_free = false;
  std::optional<AMonomial> first_mismatch;
  long long mismatch_lhs = 0, mismatch_rhs = 0;
  nlohmann::json to_json() const;
};

DecompositionReport verify_decomposition(const Region& region, const std::vector<GappedTuple>& drop = {});

bool qchar_multiplicativity_check(const LWeight& psi1, const LWeight& psi2, const Region& region);

struct OrderSample {
  LWeight psi1, psi2, psi, psi_prime;
};

// Random negative l-weights with A-perturbations supported on indices 0, -2, ..., -2(depth-1).
std::vector<OrderSample> sample_order_triples(std::uint64_t seed, int count, int depth);
LWeight random_negative_lweight(std::uint64_t seed, int depth);

struct OrderReport {
  int samples = 0;
  int premise_held = 0;
  bool ok = true;
};

OrderReport order_compatibility_check(const std::vector<OrderSample>& samples);

}  // namespace qchar
