#pragma once

#include <omp.h>

#include <vector>

#include "qchar/linalg.hpp"
#include "qchar/qseries.hpp"

// Data-parallel kernels, each with a serial reference used by the tests.
namespace qchar::kernels {

enum class Backend { Serial, Parallel };

Backend default_backend();
void set_default_backend(Backend b);

QCharSeries::Terms series_product(const QCharSeries::Terms& a, const QCharSeries::Terms& b, int degcap,
                                  Backend backend);
QCharSeries::Terms series_sum(const std::vector<QCharSeries::Terms>& parts, Backend backend);

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, Backend backend) {
  if (backend == Backend::Serial || a.rows() < 8) return multiply(a, b);
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (is_zero(x)) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) c(i, j) += x * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  return matmul(a, b, default_backend());
}

}  // namespace qchar::kernels
