#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "qma/scalar.hpp"

namespace qma {

// Prime fields used by the randomized evaluation oracle.
inline constexpr uint32_t kPrime1 = 2147483647u;
inline constexpr uint32_t kPrime2 = 2147483629u;
inline constexpr uint32_t kPrime3 = 2147483587u;

template <uint32_t P>
struct Fp {
  uint32_t v = 0;

  constexpr Fp() = default;
  Fp(int x) : Fp(static_cast<long>(x)) {}
  Fp(long x) {
    long r = x % static_cast<long>(P);
    if (r < 0) r += P;
    v = static_cast<uint32_t>(r);
  }
  static Fp raw(uint32_t r) {
    Fp f;
    f.v = r;
    return f;
  }

  friend Fp operator+(Fp a, Fp b) {
    uint64_t s = static_cast<uint64_t>(a.v) + b.v;
    if (s >= P) s -= P;
    return raw(static_cast<uint32_t>(s));
  }
  friend Fp operator-(Fp a, Fp b) { return a + (-b); }
  Fp operator-() const { return v ? raw(P - v) : raw(0); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<uint32_t>(static_cast<uint64_t>(a.v) * b.v % P));
  }
  Fp pow(uint64_t e) const {
    Fp r(1), base = *this;
    while (e) {
      if (e & 1ull) r = r * base;
      e >>= 1ull;
      if (e) base = base * base;
    }
    return r;
  }
  Fp inv() const {
    if (!v) throw std::domain_error("inverse of zero residue");
    return pow(P - 2);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

using FpPoint = std::array<uint32_t, kNumSymbols>;

inline FpPoint random_fp_point(uint32_t modulus, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FpPoint pt;
  for (auto& x : pt) x = 2 + static_cast<uint32_t>(rng() % (modulus - 4));
  return pt;
}

inline std::array<mpq_class, kNumSymbols> random_rational_point(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::array<mpq_class, kNumSymbols> pt;
  for (auto& x : pt) {
    long num = 2 + static_cast<long>(rng() % 97);
    long den = 1 + static_cast<long>(rng() % 9);
    x = mpq_class(num, den);
    x.canonicalize();
  }
  return pt;
}

template <uint32_t P>
Fp<P> eval_poly_fp(const Poly& p, const FpPoint& pt) {
  Fp<P> total;
  for (const auto& [m, c] : p) {
    uint32_t cn = static_cast<uint32_t>(
        mpz_fdiv_ui(c.get_num().get_mpz_t(), P));
    uint32_t cd = static_cast<uint32_t>(
        mpz_fdiv_ui(c.get_den().get_mpz_t(), P));
    if (cd == 0) throw std::domain_error("coefficient denominator vanishes");
    Fp<P> term = Fp<P>::raw(cn) / Fp<P>::raw(cd);
    for (int i = 0; i < kNumSymbols; ++i)
      if (m[i] > 0)
        term = term * Fp<P>::raw(pt[i]).pow(static_cast<uint64_t>(m[i]));
    total = total + term;
  }
  return total;
}

// Evaluates an exact scalar at a sample point of the prime field; throws
// std::domain_error when the denominator vanishes there (caller reseeds).
template <uint32_t P>
Fp<P> eval_scalar_fp(const Scalar& s, const FpPoint& pt) {
  Fp<P> d = eval_poly_fp<P>(s.den, pt);
  if (d == Fp<P>()) throw std::domain_error("denominator vanishes at point");
  return eval_poly_fp<P>(s.num, pt) / d;
}

// Evaluates at a rational point; throws std::domain_error when the
// denominator vanishes.
inline mpq_class eval_scalar_q(const Scalar& s,
                               const std::array<mpq_class, kNumSymbols>& pt) {
  auto v = s.eval(pt);
  if (!v) throw std::domain_error("denominator vanishes at point");
  return *v;
}

}  // namespace qma
