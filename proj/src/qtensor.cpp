#include "qma/qtensor.hpp"

#include <stdexcept>

namespace qma {

Mat build_R(int n) {
  Mat R(n * n, n * n);
  Scalar q = Scalar::symbol(SymQ);
  Scalar qq = q - qpow(-1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // e^i_i (x) e^j_j contributes at row/col (i*n + j).
      R.at(i * n + j, i * n + j) = (i == j) ? q : Scalar(1);
    }
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      // e^k_i (x) e^i_k: row (k, i), col (i, k).
      R.at(k * n + i, i * n + k) = qq;
    }
  return R;
}

Mat build_P(int n) {
  Mat P(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.at(i * n + j, j * n + i) = Scalar(1);
  return P;
}

Mat build_S(int n) { return build_P(n) * build_R(n); }

Mat build_D(int n) {
  std::vector<Scalar> d;
  d.reserve(n);
  for (int i = 0; i < n; ++i) d.push_back(qpow(-2 * i));
  return diag(d);
}

Mat amp_first(const Mat& A) { return kron(A, Mat::identity(A.rows)); }
Mat amp_second(const Mat& A) { return kron(Mat::identity(A.rows), A); }

bool check_hecke(const Mat& S) {
  Scalar qq = Scalar::symbol(SymQ) - qpow(-1);
  Mat lhs = S * S - qq * S - Mat::identity(S.rows);
  return lhs.is_zero();
}

bool check_yang_baxter(const Mat& R, int n) {
  Mat r12 = embed_pair(R, n, 0, 1);
  Mat r13 = embed_pair(R, n, 0, 2);
  Mat r23 = embed_pair(R, n, 1, 2);
  return r12 * r13 * r23 == r23 * r13 * r12;
}

bool check_braid(const Mat& S, int n) {
  Mat s1 = embed_pair(S, n, 0, 1);
  Mat s2 = embed_pair(S, n, 1, 2);
  return s1 * s2 * s1 == s2 * s1 * s2;
}

Scalar quantum_trace(const Mat& A) { return (build_D(A.rows) * A).trace(); }

Scalar quantum_trace_power(const Mat& A, unsigned k) {
  return (build_D(A.rows) * A.pow(k)).trace();
}

bool check_numerical_re(const Mat& S, const Mat& A) {
  Mat A2 = amp_second(A);
  return S * A2 * S * A2 == A2 * S * A2 * S;
}

std::vector<Scalar> charpoly(const Mat& A) {
  if (!A.is_square()) throw std::invalid_argument("charpoly of non-square");
  int n = A.rows;
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Mat M = Mat::zero(n, n);  // M_0
  for (int k = 1; k <= n; ++k) {
    M = A * (M + c[n - k + 1] * Mat::identity(n));
    c[n - k] = -(M.trace() / Scalar(k));
  }
  return c;
}

}  // namespace qma
