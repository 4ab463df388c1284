#include "qma/solutions.hpp"

#include <algorithm>
#include <stdexcept>

namespace qma {

Mat solution_symmetric(int n, int l, int m, const Scalar& lam,
                       const Scalar& mu, const Scalar& coupling) {
  if (m < 0 || l < m || l + m > n)
    throw std::invalid_argument("need 0 <= m <= l and l + m <= n");
  Mat A(n, n);
  for (int i = 0; i < m; ++i) A.at(i, i) += mu;
  for (int i = 0; i < l; ++i) A.at(i, i) += lam;
  for (int i = 0; i < m; ++i) {
    int s = l + m - 1 - i;
    A.at(i, s) += coupling;
    A.at(s, i) -= coupling;
  }
  return A;
}

int IndexPair::sigma(int i) const {
  for (size_t k = 0; k < y.size(); ++k)
    if (y[k] == i) return z[z.size() - 1 - k];
  throw std::invalid_argument("sigma argument not in the domain subset");
}

std::vector<int> IndexPair::y_plus() const {
  std::vector<int> out;
  for (int i : y)
    if (i > sigma(i)) out.push_back(i);
  return out;
}

std::vector<int> IndexPair::y_minus() const {
  std::vector<int> out;
  for (int i : y)
    if (i < sigma(i)) out.push_back(i);
  return out;
}

int IndexPair::window_lower() const {
  int best = -1;
  for (int i : y_minus()) best = std::max(best, i);
  for (int i : y_plus()) best = std::max(best, sigma(i));
  return best + 1;  // position -> cardinality; empty -> 0
}

int IndexPair::window_upper(int n) const {
  int best = n;
  for (int i : y_plus()) best = std::min(best, i);
  for (int i : y_minus()) best = std::min(best, sigma(i));
  return best + 1;  // empty -> n + 1
}

bool IndexPair::disjoint() const {
  for (int i : y)
    if (std::find(z.begin(), z.end(), i) != z.end()) return false;
  return true;
}

bool IndexPair::triangular_ok(int n) const {
  return 2 * size() <= n && disjoint();
}

namespace {

void subsets(int n, int k, int start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IndexPair> enumerate_index_pairs(int n) {
  std::vector<IndexPair> pairs;
  for (int k = 0; k <= n; ++k) {
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    subsets(n, k, 0, cur, subs);
    for (const auto& y : subs)
      for (const auto& z : subs) pairs.push_back(IndexPair{y, z});
  }
  return pairs;
}

Mat solution_triangular(int n, const IndexPair& pair, int l,
                        const Scalar& lam) {
  if (l < 0 || l > n) throw std::invalid_argument("projector length out of range");
  Mat B(n, n);
  for (int i = 0; i < l; ++i) B.at(i, i) += lam;
  for (int i : pair.y) B.at(i, pair.sigma(i)) += Scalar(1);
  return B;
}

}  // namespace qma
