#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mspinn/core/errors.hpp"

namespace mspinn {

using Vector = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_((size_t)rows * cols, 0.0) {
    if (rows < 0 || cols < 0) throw config_error("Matrix: negative dimension");
  }

  /// Construct from explicit data; rejects non-finite entries.
  static Matrix from_data(int rows, int cols, std::vector<double> data) {
    if ((size_t)rows * cols != data.size()) throw config_error("Matrix::from_data: size mismatch");
    if (!all_finite(data)) throw config_error("Matrix::from_data: non-finite entry");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[(size_t)i * cols_ + j]; }
  double operator()(int i, int j) const { return data_[(size_t)i * cols_ + j]; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> row(int i) const { return {data_.data() + (size_t)i * cols_, (size_t)cols_}; }
  double* row_ptr(int i) { return data_.data() + (size_t)i * cols_; }
  const double* row_ptr(int i) const { return data_.data() + (size_t)i * cols_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw config_error("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline Vector matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != (int)x.size()) throw config_error("matvec: dimension mismatch");
  Vector y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    const double* r = a.row_ptr(i);
    for (int j = 0; j < a.cols(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

/// Gram matrix J J^T of the rows of J; symmetric by construction.
inline Matrix gram(const Matrix& j) {
  Matrix k(j.rows(), j.rows());
  for (int i = 0; i < j.rows(); ++i) {
    const double* ri = j.row_ptr(i);
    for (int l = i; l < j.rows(); ++l) {
      const double* rl = j.row_ptr(l);
      double acc = 0.0;
      for (int c = 0; c < j.cols(); ++c) acc += ri[c] * rl[c];
      k(i, l) = acc;
      k(l, i) = acc;
    }
  }
  return k;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double frobenius(const Matrix& a) {
  return norm2({a.data(), (size_t)a.rows() * a.cols()});
}

/// ||pred - ref||_2 / ||ref||_2 over equally shaped samples.
inline double relative_l2(std::span<const double> pred, std::span<const double> ref) {
  if (pred.size() != ref.size()) throw config_error("relative_l2: shape mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - ref[i];
    num += d * d;
    den += ref[i] * ref[i];
  }
  if (den == 0.0) throw config_error("relative_l2: reference has zero norm");
  return std::sqrt(num / den);
}

}  // namespace mspinn
