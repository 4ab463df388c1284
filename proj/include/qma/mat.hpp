#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qma/scalar.hpp"

namespace qma {

// Dense matrix over the exact scalar field; row-major storage.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Scalar& at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  static Mat zero(int r, int c) { return Mat(r, c); }
  static Mat identity(int n);

  bool is_zero() const;
  bool is_square() const { return rows == cols; }

  Mat operator-() const;
  friend Mat operator+(const Mat& x, const Mat& y);
  friend Mat operator-(const Mat& x, const Mat& y);
  friend Mat operator*(const Mat& x, const Mat& y);
  friend Mat operator*(const Scalar& c, const Mat& x);
  friend bool operator==(const Mat& x, const Mat& y);
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  Mat transpose() const;
  Scalar trace() const;
  Mat pow(unsigned e) const;
};

// Matrix unit: 1 at row i, column j (0-based), zero elsewhere.
Mat matrix_unit(int n, int i, int j);

Mat diag(const std::vector<Scalar>& d);

// Kronecker product with the first factor major: entry at row i1*y.rows + i2,
// column j1*y.cols + j2 is x(i1,j1) * y(i2,j2).
Mat kron(const Mat& x, const Mat& y);

// Embeds an operator acting on factors (s1, s2) of a triple tensor power of
// an n-dimensional space; op is n^2 x n^2, the result n^3 x n^3.
Mat embed_pair(const Mat& op, int n, int s1, int s2);

// Exact inverse via Gaussian elimination; nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

// g^(-1) * m * g; throws std::domain_error when g is singular.
Mat gauge_transform(const Mat& m, const Mat& g);

std::string to_string(const Mat& m);

}  // namespace qma
