#ifndef REEMBED_MATRIX_HPP
#define REEMBED_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "reembed/field.hpp"

namespace reembed {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix columns(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= cols_) throw std::out_of_range("column index out of range");
        m(i, k) = (*this)(i, idx[k]);
      }
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Scales every row by the lcm of its denominators, giving an integer matrix
/// with the same row space (and the same rank of every column selection).
inline Matrix<Integer> integer_rows(const Matrix<Rational>& a) {
  Matrix<Integer> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  return m;
}

namespace detail {

// Fraction-free elimination over an integral domain with exact division.
// On return m is in echelon form; returns the rank and the row-swap parity.
template <class T>
std::pair<std::size_t, bool> bareiss_in_place(Matrix<T>& m) {
  T prev(1);
  std::size_t r = 0;
  bool odd_swaps = false;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == T(0)) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      m.swap_rows(p, r);
      odd_swaps = !odd_swaps;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        T v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        if constexpr (std::is_same_v<T, Integer>) {
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
          m(i, j) = std::move(v);
        } else {
          m(i, j) = v / prev;
        }
      }
      m(i, c) = T(0);
    }
    prev = m(r, c);
    ++r;
  }
  return {r, odd_swaps};
}

}  // namespace detail

/// Rank by fraction-free (Bareiss) elimination.
template <Field F>
std::size_t rank(const Matrix<F>& a) {
  if constexpr (std::is_same_v<F, Rational>) {
    auto m = integer_rows(a);
    return detail::bareiss_in_place(m).first;
  } else {
    auto m = a;
    return detail::bareiss_in_place(m).first;
  }
}

inline std::size_t rank(const Matrix<Integer>& a) {
  auto m = a;
  return detail::bareiss_in_place(m).first;
}

/// Determinant of a square integer matrix by Bareiss elimination.
inline Integer determinant(Matrix<Integer> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  auto [r, odd] = detail::bareiss_in_place(m);
  if (r < m.rows()) return 0;
  Integer d = m(m.rows() - 1, m.cols() - 1);
  return odd ? Integer(-d) : d;
}

/// Determinant of a square field matrix; over QQ the rows are first cleared
/// of denominators and the Bareiss result rescaled.
template <Field F>
F determinant(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if constexpr (std::is_same_v<F, Rational>) {
    auto m = integer_rows(a);
    Rational scale = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (sgn(a(i, j)) != 0) {
          scale *= Rational(m(i, j)) / a(i, j);
          break;
        }
      }
    }
    Integer d = determinant(std::move(m));
    if (d == 0) return Rational(0);
    Rational r(d);
    return r / scale;
  } else {
    auto m = a;
    if (m.rows() == 0) return F(1);
    auto [r, odd] = detail::bareiss_in_place(m);
    if (r < m.rows()) return F(0);
    F d = m(m.rows() - 1, m.cols() - 1);
    return odd ? F(-d) : d;
  }
}

/// Result of Gauss-Jordan elimination: reduced row echelon form and pivot columns.
template <Field F>
struct RowEchelon {
  Matrix<F> matrix;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with leftmost pivots; zero rows are dropped.
template <Field F>
RowEchelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = F(m(r, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = F(m(i, j) - f * m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<F> out(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return {std::move(out), std::move(pivots)};
}

/// Computes (A_B)^{-1} A for the column selection B: row p of the result has a
/// 1 in column B[p] and zeros in the other selected columns. Throws if A_B is
/// singular or not square.
template <Field F>
Matrix<F> solve_for_columns(Matrix<F> m, std::span<const std::size_t> cols) {
  if (cols.size() != m.rows()) throw std::invalid_argument("column selection size must equal row count");
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (c >= m.cols()) throw std::out_of_range("column index out of range");
    std::size_t p = k;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) throw std::domain_error("selected columns are linearly dependent");
    m.swap_rows(p, k);
    F inv = F(1) / m(k, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(k, j) = F(m(k, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == k || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = F(m(i, j) - f * m(k, j));
    }
  }
  return m;
}

}  // namespace reembed

#endif  // REEMBED_MATRIX_HPP
