#pragma once

// Dense matrices over an exact field, with row reduction.

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace latticeforms {

template <class F>
using Vector = std::vector<F>;

template <class F>
class FieldMatrix {
 public:
  using value_type = F;
  using traits = field_traits<F>;

  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, traits::zero()) {}
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<F> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("FieldMatrix: expected " + std::to_string(rows_ * cols_) +
                                  " entries, got " + std::to_string(data_.size()));
  }

  static FieldMatrix identity(std::size_t n) {
    FieldMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = traits::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<F>& entries() const { return data_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  F& at(std::size_t r, std::size_t c) {
    check(r, c);
    return (*this)(r, c);
  }
  const F& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return (*this)(r, c);
  }

  std::span<const F> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!traits::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw std::out_of_range("FieldMatrix index (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
struct RowEchelon {
  FieldMatrix<F> reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination; pivots are normalised to one.
template <class F>
RowEchelon<F> row_reduce(FieldMatrix<F> m) {
  using T = field_traits<F>;
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && T::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead, k));
    const F inv = T::inverse(m(lead, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(lead, k) = F(m(lead, k) * inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || T::is_zero(m(r, c))) continue;
      const F factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F(m(r, k) - factor * m(lead, k));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
FieldMatrix<F> rref(const FieldMatrix<F>& m) {
  return row_reduce(m).reduced;
}

template <class F>
std::size_t rank(const FieldMatrix<F>& m) {
  return row_reduce(m).pivot_columns.size();
}

/// Basis of {x : m x = 0}, one vector per free column in ascending order.
template <class F>
std::vector<Vector<F>> nullspace_basis(const FieldMatrix<F>& m) {
  using T = field_traits<F>;
  const auto [reduced, pivots] = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), T::zero());
    v[free] = T::one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(-reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
FieldMatrix<F> matmul(const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  using T = field_traits<F>;
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  FieldMatrix<F> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (T::is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class F>
FieldMatrix<F> operator*(const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  return matmul(a, b);
}

template <class F>
FieldMatrix<F> operator+(const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  FieldMatrix<F> out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = F(a(r, c) + b(r, c));
  return out;
}

template <class F>
FieldMatrix<F> operator-(const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  FieldMatrix<F> out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = F(a(r, c) - b(r, c));
  return out;
}

template <class F>
Vector<F> apply(const FieldMatrix<F>& m, std::span<const F> x) {
  if (x.size() != m.cols()) throw std::invalid_argument("apply: vector length mismatch");
  Vector<F> out(m.rows(), field_traits<F>::zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * x[c];
  return out;
}

template <class F>
Vector<F> apply(const FieldMatrix<F>& m, const Vector<F>& x) {
  return apply(m, std::span<const F>(x));
}

}  // namespace latticeforms
