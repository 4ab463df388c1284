#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qma/mat.hpp"
#include "qma/scalar.hpp"

namespace qma {

// A word in at most 16 generators, of length at most 15, packed 4 bits per
// letter from the high nibble down.  Ordering is degree-lexicographic:
// shorter words first, equal lengths lexicographically by letters.
struct Word {
  uint8_t len = 0;
  uint64_t bits = 0;

  static Word empty() { return {}; }
  static Word single(int g) {
    if (g < 0 || g > 15) throw std::invalid_argument("generator id out of range");
    return {1, static_cast<uint64_t>(g) << 60};
  }
  static Word from_letters(const std::vector<int>& letters) {
    Word w;
    for (int g : letters) w = concat(w, single(g));
    return w;
  }

  int letter(int i) const {
    return static_cast<int>((bits >> (60 - 4 * i)) & 0xFull);
  }
  std::vector<int> letters() const {
    std::vector<int> out(len);
    for (int i = 0; i < len; ++i) out[i] = letter(i);
    return out;
  }

  static Word concat(const Word& a, const Word& b) {
    if (a.len + b.len > 15) throw std::length_error("word too long");
    return {static_cast<uint8_t>(a.len + b.len),
            a.bits | (b.bits >> (4 * a.len))};
  }

  friend bool operator==(const Word& x, const Word& y) {
    return x.len == y.len && x.bits == y.bits;
  }
  friend bool operator<(const Word& x, const Word& y) {
    if (x.len != y.len) return x.len < y.len;
    return x.bits < y.bits;
  }
  friend bool operator>(const Word& x, const Word& y) { return y < x; }
};

struct WordHash {
  size_t operator()(const Word& w) const {
    return static_cast<size_t>((w.bits ^ w.len) * 0x9E3779B97F4A7C15ull);
  }
};

// A free-algebra element over a field F: terms sorted by word, largest first.
template <class F>
using Elt = std::vector<std::pair<Word, F>>;

template <class F>
bool elt_is_zero(const Elt<F>& e) {
  return e.empty();
}

template <class F>
Elt<F> elt_term(const Word& w, const F& c) {
  if (c == F()) return {};
  return {{w, c}};
}

template <class F>
Elt<F> elt_const(const F& c) {
  return elt_term(Word::empty(), c);
}

template <class F>
Elt<F> elt_gen(int g, const F& c) {
  return elt_term(Word::single(g), c);
}

// dst + c * src, merging sorted term lists.
template <class F>
Elt<F> elt_axpy(const Elt<F>& dst, const F& c, const Elt<F>& src) {
  if (c == F()) return dst;
  Elt<F> out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first > src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first > dst[i].first) {
      F v = c * src[j].second;
      if (!(v == F())) out.emplace_back(src[j].first, v);
      ++j;
    } else {
      F v = dst[i].second + c * src[j].second;
      if (!(v == F())) out.emplace_back(dst[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

template <class F>
Elt<F> elt_add(const Elt<F>& x, const Elt<F>& y) {
  return elt_axpy(x, F(1), y);
}

template <class F>
Elt<F> elt_neg(const Elt<F>& x) {
  Elt<F> out = x;
  for (auto& [w, c] : out) c = -c;
  return out;
}

template <class F>
Elt<F> elt_sub(const Elt<F>& x, const Elt<F>& y) {
  return elt_axpy(x, -F(1), y);
}

template <class F>
Elt<F> elt_scale(const Elt<F>& x, const F& c) {
  if (c == F()) return {};
  Elt<F> out = x;
  for (auto& [w, v] : out) v = c * v;
  return out;
}

template <class F>
Elt<F> elt_mul(const Elt<F>& x, const Elt<F>& y) {
  std::vector<std::pair<Word, F>> terms;
  terms.reserve(x.size() * y.size());
  for (const auto& [wx, cx] : x)
    for (const auto& [wy, cy] : y)
      terms.emplace_back(Word::concat(wx, wy), cx * cy);
  std::sort(terms.begin(), terms.end(),
            [](const auto& p, const auto& q) { return p.first > q.first; });
  Elt<F> out;
  for (auto& [w, c] : terms) {
    if (!out.empty() && out.back().first == w) {
      out.back().second = out.back().second + c;
      if (out.back().second == F()) out.pop_back();
    } else if (!(c == F())) {
      out.emplace_back(w, c);
    }
  }
  return out;
}

// Pre/post-multiplication by plain words preserves term order (lengths shift
// uniformly and equal-length comparisons are decided inside the old letters),
// so the sorted structure can be mapped through directly.
template <class F>
Elt<F> elt_conjugate(const Word& w1, const Elt<F>& e, const Word& w2) {
  Elt<F> out = e;
  for (auto& [w, c] : out) w = Word::concat(Word::concat(w1, w), w2);
  return out;
}

using FreeElt = Elt<Scalar>;

std::string elt_str(const FreeElt& e, const std::vector<std::string>& names);

// Matrices with free-algebra entries.  The product is the right-action
// composition used throughout the component calculus:
//   (M * N)[r][c] = sum_k M[k][c] * N[r][k],
// so that (E*E)[m][n] = sum_i E^i_n E^m_i for the generator matrix E.
struct NCMat {
  int rows = 0, cols = 0;
  std::vector<FreeElt> e;

  NCMat() = default;
  NCMat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {}

  FreeElt& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
  const FreeElt& at(int r, int c) const {
    return e[static_cast<size_t>(r) * cols + c];
  }
  bool is_zero() const;
};

NCMat nc_add(const NCMat& x, const NCMat& y);
NCMat nc_sub(const NCMat& x, const NCMat& y);
NCMat nc_scale(const Scalar& c, const NCMat& x);
NCMat nc_mul(const NCMat& x, const NCMat& y);  // right-action product
NCMat nc_identity(int n);

// Embeds a scalar matrix as an algebra-valued one.
NCMat nc_embed(const Mat& m);

// Generator matrix: entry (i, j) is the single-letter word base + i*n + j.
NCMat nc_generators(int n, int base);

// First-leg amplification on composite indices: entry[(i,a)][(j,b)] is
// M[i][j] when a == b, else zero.
NCMat nc_amp_first(const NCMat& m);

// Second-leg amplification on composite indices: entry[(a,i)][(b,j)] is
// M[i][j] when a == b, else zero.
NCMat nc_amp_second(const NCMat& m);

// Sum of diagonal entries weighted by a scalar diagonal: sum_i d(i,i) M(i,i).
FreeElt nc_weighted_trace(const Mat& d, const NCMat& m);

// Plain trace of the right-action square and friends: sum_i M(i,i).
FreeElt nc_trace(const NCMat& m);

}  // namespace qma
