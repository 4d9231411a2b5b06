#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qchar/qscalar.hpp"

namespace qchar {

// Dense row-major matrix over an exact field (QScalar or Rational).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}

  static Matrix identity(size_t n, const T& d = T(1)) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = d;
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (auto& x : a_)
      if (!qchar::is_zero(x)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.a_)
      if (!qchar::is_zero(x)) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

  std::vector<T> column(size_t j) const {
    std::vector<T> v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (is_zero(x)) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) c(i, j) += x * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& v) {
  std::vector<T> out(a.rows(), T(0));
  for (size_t j = 0; j < a.cols(); ++j) {
    if (is_zero(v[j])) continue;
    for (size_t i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, j))) out[i] += a(i, j) * v[j];
  }
  return out;
}

// Incremental sparse row echelon form; rows are maps column -> value.
template <class T>
class SparseEchelon {
 public:
  using Row = std::map<size_t, T>;

  // Reduce v against the stored pivots; returns the remainder.
  Row reduce(Row v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      T f = it->second;
      size_t col = it->first;
      for (auto& [c, x] : p->second) {
        T nv = v.count(c) ? T(v[c] - f * x) : T(T(0) - f * x);
        if (is_zero(nv))
          v.erase(c);
        else
          v[c] = nv;
      }
      it = v.upper_bound(col);
    }
    return v;
  }

  // Returns true if v was independent of the stored rows.
  bool add(const Row& v) {
    Row r = reduce(v);
    if (r.empty()) return false;
    T lead = r.begin()->second;
    if (!(lead == T(1)))
      for (auto& [c, x] : r) x = x / lead;
    pivots_.emplace(r.begin()->first, std::move(r));
    return true;
  }

  bool contains(const Row& v) const { return reduce(v).empty(); }
  size_t rank() const { return pivots_.size(); }

 private:
  std::map<size_t, Row> pivots_;
};

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<size_t> row_reduce(Matrix<T>& m) {
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = m.rows();
    for (size_t i = row; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        p = i;
        break;
      }
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <class T>
size_t rank(Matrix<T> m) {
  return row_reduce(m).size();
}

// Basis of {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  auto piv = row_reduce(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = T(0) - m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of a x = b, if one exists.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = row_reduce(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<T> x(a.cols(), T(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, int n) {
  Matrix<T> r = Matrix<T>::identity(m.rows());
  for (int i = 0; i < n; ++i) r = multiply(r, m);
  return r;
}

}  // namespace qchar
