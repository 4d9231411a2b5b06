#include "qchar/kernels.hpp"

#include <atomic>
#include <exception>

namespace qchar::kernels {

namespace {
std::atomic<Backend> g_backend{Backend::Parallel};

void accumulate(QCharSeries::Terms& into, const AMonomial& m, long long c) {
  auto [it, fresh] = into.emplace(m, c);
  if (fresh) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) into.erase(it);
}
}  // namespace

Backend default_backend() { return g_backend.load(); }
void set_default_backend(Backend b) { g_backend.store(b); }

QCharSeries::Terms series_product(const QCharSeries::Terms& a, const QCharSeries::Terms& b, int degcap,
                                  Backend backend) {
  std::vector<std::pair<AMonomial, long long>> left(a.begin(), a.end());
  auto row = [&](size_t i, QCharSeries::Terms& out) {
    const auto& [ma, ca] = left[i];
    for (auto& [mb, cb] : b) {
      if (ma.degree() + mb.degree() > degcap) continue;
      accumulate(out, ma * mb, checked_mul(ca, cb));
    }
  };
  if (backend == Backend::Serial || left.size() < 16) {
    QCharSeries::Terms out;
    for (size_t i = 0; i < left.size(); ++i) row(i, out);
    return out;
  }
  int nt = omp_get_max_threads();
  std::vector<QCharSeries::Terms> partial(nt);
  const long n = static_cast<long>(left.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      row(static_cast<size_t>(i), partial[omp_get_thread_num()]);
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return series_sum(partial, Backend::Serial);
}

QCharSeries::Terms series_sum(const std::vector<QCharSeries::Terms>& parts, Backend backend) {
  if (backend == Backend::Serial || parts.size() < 4) {
    QCharSeries::Terms out;
    for (auto& p : parts)
      for (auto& [m, c] : p) accumulate(out, m, c);
    return out;
  }
  // pairwise tree reduction; integer addition makes the result schedule independent
  std::vector<QCharSeries::Terms> level(parts.begin(), parts.end());
  while (level.size() > 1) {
    std::vector<QCharSeries::Terms> next((level.size() + 1) / 2);
    const long n = static_cast<long>(next.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      next[i] = std::move(level[2 * i]);
      if (2 * i + 1 < static_cast<long>(level.size()))
        for (auto& [m, c] : level[2 * i + 1]) accumulate(next[i], m, c);
    }
    level = std::move(next);
  }
  return level.front();
}

}  // namespace qchar::kernels
