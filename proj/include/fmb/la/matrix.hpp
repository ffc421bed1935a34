#pragma once

#include <cstddef>
#include <vector>

namespace fmb::la {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }

  double* row(std::size_t i) { return d_.data() + i * cols_; }
  const double* row(std::size_t i) const { return d_.data() + i * cols_; }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }

  void fill(double v) { d_.assign(d_.size(), v); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> d_;
};

Matrix multiply(const Matrix& a, const Matrix& b);            // a * b
Matrix multiply_nt(const Matrix& a, const Matrix& b);         // a * b^T
Matrix multiply_tn(const Matrix& a, const Matrix& b);         // a^T * b
Matrix transpose(const Matrix& a);
Vector multiply(const Matrix& a, const Vector& x);            // a * x
Vector multiply_t(const Matrix& a, const Vector& x);          // a^T * x

// a += s * b (same shape)
void add_scaled(Matrix& a, double s, const Matrix& b);
void symmetrize(Matrix& a);  // a = (a + a^T) / 2

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs(const Vector& v);
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);

}  // namespace fmb::la
