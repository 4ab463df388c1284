#include "qma/free_algebra.hpp"

namespace qma {

std::string elt_str(const FreeElt& e, const std::vector<std::string>& names) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e) {
    std::string word;
    for (int i = 0; i < w.len; ++i) {
      if (i) word += "*";
      word += names.at(static_cast<size_t>(w.letter(i)));
    }
    std::string coeff = c.str();
    std::string term;
    if (word.empty()) {
      term = coeff;
    } else if (c.is_one()) {
      term = word;
    } else if ((-c).is_one()) {
      term = "-" + word;
    } else if (coeff.find(' ') != std::string::npos ||
               coeff.find('/') != std::string::npos) {
      term = "(" + coeff + ")*" + word;
    } else {
      term = coeff + "*" + word;
    }
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

bool NCMat::is_zero() const {
  for (const FreeElt& x : e)
    if (!x.empty()) return false;
  return true;
}

NCMat nc_add(const NCMat& x, const NCMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
  NCMat m = x;
  for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = elt_add(m.e[i], y.e[i]);
  return m;
}

NCMat nc_sub(const NCMat& x, const NCMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
  NCMat m = x;
  for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = elt_sub(m.e[i], y.e[i]);
  return m;
}

NCMat nc_scale(const Scalar& c, const NCMat& x) {
  NCMat m = x;
  for (FreeElt& v : m.e) v = elt_scale(v, c);
  return m;
}

NCMat nc_mul(const NCMat& x, const NCMat& y) {
  if (x.rows != y.cols) throw std::invalid_argument("matrix shape mismatch");
  NCMat m(y.rows, x.cols);
  for (int r = 0; r < y.rows; ++r)
    for (int c = 0; c < x.cols; ++c) {
      FreeElt sum;
      for (int k = 0; k < x.rows; ++k) {
        const FreeElt& xv = x.at(k, c);
        const FreeElt& yv = y.at(r, k);
        if (xv.empty() || yv.empty()) continue;
        sum = elt_add(sum, elt_mul(xv, yv));
      }
      m.at(r, c) = std::move(sum);
    }
  return m;
}

NCMat nc_identity(int n) {
  NCMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = elt_const(Scalar(1));
  return m;
}

NCMat nc_embed(const Mat& x) {
  NCMat m(x.rows, x.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c)
      if (!x.at(r, c).is_zero()) m.at(r, c) = elt_const(x.at(r, c));
  return m;
}

NCMat nc_generators(int n, int base) {
  NCMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = elt_gen(base + i * n + j, Scalar(1));
  return m;
}

NCMat nc_amp_first(const NCMat& x) {
  int n = x.rows;
  NCMat m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) m.at(i * n + a, j * n + a) = x.at(i, j);
  return m;
}

NCMat nc_amp_second(const NCMat& x) {
  int n = x.rows;
  NCMat m(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(a * n + i, a * n + j) = x.at(i, j);
  return m;
}

FreeElt nc_weighted_trace(const Mat& d, const NCMat& m) {
  FreeElt out;
  for (int i = 0; i < m.rows; ++i)
    out = elt_add(out, elt_scale(m.at(i, i), d.at(i, i)));
  return out;
}

FreeElt nc_trace(const NCMat& m) {
  FreeElt out;
  for (int i = 0; i < m.rows; ++i) out = elt_add(out, m.at(i, i));
  return out;
}

}  // namespace qma
