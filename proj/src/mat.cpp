#include "qma/mat.hpp"

#include <stdexcept>

namespace qma {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

bool Mat::is_zero() const {
  for (const Scalar& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (Scalar& x : m.a) x = -x;
  return m;
}

Mat operator+(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
  Mat m = x;
  for (size_t i = 0; i < m.a.size(); ++i) m.a[i] += y.a[i];
  return m;
}

Mat operator-(const Mat& x, const Mat& y) { return x + (-y); }

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat m(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      const Scalar& xv = x.at(i, k);
      if (xv.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        const Scalar& yv = y.at(k, j);
        if (yv.is_zero()) continue;
        m.at(i, j) += xv * yv;
      }
    }
  }
  return m;
}

Mat operator*(const Scalar& c, const Mat& x) {
  Mat m = x;
  for (Scalar& v : m.a) v *= c;
  return m;
}

bool operator==(const Mat& x, const Mat& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

Mat Mat::transpose() const {
  Mat m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

Scalar Mat::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
  Scalar t;
  for (int i = 0; i < rows; ++i) t += at(i, i);
  return t;
}

Mat Mat::pow(unsigned e) const {
  if (!is_square()) throw std::invalid_argument("power of non-square matrix");
  Mat r = identity(rows), base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

Mat matrix_unit(int n, int i, int j) {
  Mat m(n, n);
  m.at(i, j) = Scalar(1);
  return m;
}

Mat diag(const std::vector<Scalar>& d) {
  Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i)
    m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat m(x.rows * y.rows, x.cols * y.cols);
  for (int i1 = 0; i1 < x.rows; ++i1)
    for (int j1 = 0; j1 < x.cols; ++j1) {
      const Scalar& xv = x.at(i1, j1);
      if (xv.is_zero()) continue;
      for (int i2 = 0; i2 < y.rows; ++i2)
        for (int j2 = 0; j2 < y.cols; ++j2) {
          const Scalar& yv = y.at(i2, j2);
          if (yv.is_zero()) continue;
          m.at(i1 * y.rows + i2, j1 * y.cols + j2) = xv * yv;
        }
    }
  return m;
}

Mat embed_pair(const Mat& op, int n, int s1, int s2) {
  if (op.rows != n * n || op.cols != n * n)
    throw std::invalid_argument("embed_pair needs an n^2 x n^2 operator");
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 > 2 || s2 > 2)
    throw std::invalid_argument("embed_pair slots must be distinct in 0..2");
  int other = 3 - s1 - s2;
  Mat m(n * n * n, n * n * n);
  auto flat = [n](const int x[3]) { return (x[0] * n + x[1]) * n + x[2]; };
  for (int u1 = 0; u1 < n; ++u1)
    for (int u2 = 0; u2 < n; ++u2)
      for (int v1 = 0; v1 < n; ++v1)
        for (int v2 = 0; v2 < n; ++v2) {
          const Scalar& val = op.at(u1 * n + u2, v1 * n + v2);
          if (val.is_zero()) continue;
          for (int w = 0; w < n; ++w) {
            int x[3], y[3];
            x[s1] = u1, x[s2] = u2, x[other] = w;
            y[s1] = v1, y[s2] = v2, y[other] = w;
            m.at(flat(x), flat(y)) = val;
          }
        }
  return m;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.is_square()) return std::nullopt;
  int n = m.rows;
  Mat work = m, inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!work.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(work.at(pivot, c), work.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    Scalar p = work.at(col, col).inverse();
    for (int c = 0; c < n; ++c) {
      work.at(col, c) *= p;
      inv.at(col, c) *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Scalar f = work.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        work.at(r, c) -= f * work.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

Mat gauge_transform(const Mat& m, const Mat& g) {
  auto gi = inverse(g);
  if (!gi) throw std::domain_error("gauge transform by a singular matrix");
  return (*gi) * m * g;
}

std::string to_string(const Mat& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows; ++i) {
    out += (i ? ",\n [" : "[");
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ", ";
      out += m.at(i, j).str();
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace qma
