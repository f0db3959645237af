#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hgfrob/scalar.hpp"

namespace hgf {

// Dense row-major matrix over any ring-like element type. Elements that need
// a context (series) are constructed from a fill prototype.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix out;
    out.rows_ = cols_;
    out.cols_ = rows_;
    out.data_.reserve(data_.size());
    for (int j = 0; j < cols_; ++j)
      for (int i = 0; i < rows_; ++i) out.data_.push_back((*this)(i, j));
    return out;
  }

  template <class Fn>
  auto map(Fn&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    std::vector<U> mapped;
    mapped.reserve(data_.size());
    for (const auto& x : data_) mapped.push_back(fn(x));
    return Matrix<U>::from_data(rows_, cols_, std::move(mapped));
  }

  static Matrix from_data(int rows, int cols, std::vector<T> data) {
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_, a.data_.empty() ? b.data_.front() : a.data_.front());
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (int k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        out(i, j) = std::move(acc);
      }
    }
    return out;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <class F>
Matrix<F> identity_matrix(int n) {
  Matrix<F> m(n, n, F(0));
  for (int i = 0; i < n; ++i) m(i, i) = F(1);
  return m;
}

template <class F>
Matrix<F> scaled(Matrix<F> m, const F& s) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * s;
  return m;
}

Matrix<Complex> to_complex(const Matrix<Rational>& m);

// Gaussian elimination with partial pivoting (largest magnitude).
Matrix<Rational> inverse(const Matrix<Rational>& m);
Matrix<Complex> inverse(const Matrix<Complex>& m);
Rational determinant(const Matrix<Rational>& m);
Complex determinant(const Matrix<Complex>& m);
std::vector<Complex> solve(const Matrix<Complex>& a, const std::vector<Complex>& b);

// Characteristic polynomial coefficients c_0..c_n of det(x - A), monic.
std::vector<Complex> characteristic_polynomial(const Matrix<Complex>& a);

// All roots of a monic polynomial with coefficients c_0..c_n (c_n = 1).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

Real max_abs(const Matrix<Complex>& m);

}  // namespace hgf
