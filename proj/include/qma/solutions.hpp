#pragma once

#include <vector>

#include "qma/mat.hpp"

namespace qma {

// Symmetric-type solution family (0-based translation of the 1-based source
// data).  For parameters l >= m >= 0 with l + m <= n:
//   A = mu * sum_{i<m} e^i_i + lam * sum_{i<l} e^i_i
//       + coupling * sum_{i<m} (e^i_{s(i)} - e^{s(i)}_i),   s(i) = l+m-1-i.
// The reflection equation holds when coupling^2 == lam * mu (the canonical
// choice is lam = a^2, mu = b^2, coupling = a*b).  The characteristic
// polynomial is x^(n-l-m) (x-lam)^l (x-mu)^m.
Mat solution_symmetric(int n, int l, int m, const Scalar& lam,
                       const Scalar& mu, const Scalar& coupling);

// A pair of equal-size index subsets Y, Z of {0..n-1} together with the
// unique decreasing bijection sigma: Y -> Z (k-th smallest element of Y maps
// to k-th largest of Z).
struct IndexPair {
  std::vector<int> y, z;  // ascending, equal sizes

  int size() const { return static_cast<int>(y.size()); }
  int sigma(int i) const;          // value for i in y
  std::vector<int> y_plus() const;   // { i in y : i > sigma(i) }
  std::vector<int> y_minus() const;  // { i in y : i < sigma(i) }

  // Boundary counts for the admissible window of the projector length l,
  // expressed as cardinalities (1-based positions):
  //   lower = max over (y_minus and sigma(y_plus)) of position+1, or 0;
  //   upper = min over (y_plus and sigma(y_minus)) of position+1, or n+1.
  // Valid lengths are lower <= l < upper.
  int window_lower() const;
  int window_upper(int n) const;

  bool disjoint() const;  // y and z share no index
  // Constraints for the triangular family: |y| <= n/2 and disjointness.
  bool triangular_ok(int n) const;
};

// All pairs of equal-size subsets; the count is binomial(2n, n).
std::vector<IndexPair> enumerate_index_pairs(int n);

// Triangular-type solution family:
//   B = lam * sum_{i<l} e^i_i + sum_{i in y} e^i_{sigma(i)}.
// With pair.triangular_ok(n) and window_lower() <= l < window_upper(n) this
// satisfies the reflection equation; eigenvalues are lam (multiplicity l)
// and 0, and lam == 0 gives a square-zero matrix.
Mat solution_triangular(int n, const IndexPair& pair, int l,
                        const Scalar& lam);

}  // namespace qma
