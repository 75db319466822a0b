#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lubintate/errors.hpp"

namespace lubintate {

/// Small dense row-major matrix over an arbitrary ring-like value type.
/// Entries carry their own ring context (field, precision), so there is no
/// global zero; products are seeded from the first term.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const auto& x : data_) out.data_.push_back(f(x));
    return out;
  }

  const std::vector<T>& data() const noexcept { return data_; }

 private:
  template <class U>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows() || a.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix<T> out(a.rows(), b.cols(), a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size() || v.empty()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
  std::vector<T> out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T acc = a(i, 0) * v[0];
    for (std::size_t k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * v[k];
    out.push_back(std::move(acc));
  }
  return out;
}

/// Determinant by cofactor expansion along the first row; the ranks in this
/// project are tiny and the entries live in rings without cheap division.
template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.square() || m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  auto minor_without = [&](std::size_t c) {
    Matrix<T> minor(n - 1, n - 1, m(0, 0));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = m(r, k);
      }
    }
    return minor;
  };
  T acc = m(0, 0) * determinant(minor_without(0));
  for (std::size_t c = 1; c < n; ++c) {
    T term = m(0, c) * determinant(minor_without(c));
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Adjugate matrix, so that m * adjugate(m) = det(m) * I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m, const T& one) {
  if (!m.square() || m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "adjugate of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> out(n, n, m(0, 0));
  if (n == 1) {
    out(0, 0) = one;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<T> minor(n - 1, n - 1, m(0, 0));
      std::size_t rr = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      T cof = determinant(minor);
      // adj(i, j) is the (j, i) cofactor
      out(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return out;
}

}  // namespace lubintate
