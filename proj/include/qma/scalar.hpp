#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qma {

// Exact scalar domain: rational functions over Q in a fixed ordered symbol set.
// Symbols: q (the deformation parameter), a, b, t, and four generic parameters
// l1..l4 used for eigenvalues and indeterminate matrix entries.
inline constexpr int kNumSymbols = 8;
enum Sym : int { SymQ = 0, SymA, SymB, SymT, SymL1, SymL2, SymL3, SymL4 };
const std::array<std::string, kNumSymbols>& symbol_names();

using Mono = std::array<int16_t, kNumSymbols>;

Mono mono_one();
int mono_degree(const Mono& m);
Mono mono_mul(const Mono& x, const Mono& y);
bool mono_divides(const Mono& d, const Mono& m);
Mono mono_div(const Mono& m, const Mono& d);

// Graded-lex order, descending, so that map iteration starts at the leading
// term.
struct MonoGreater {
  bool operator()(const Mono& x, const Mono& y) const;
};

using Poly = std::map<Mono, mpq_class, MonoGreater>;

Poly p_zero();
Poly p_const(const mpq_class& c);
Poly p_symbol(int sym);
bool p_is_zero(const Poly& p);
bool p_is_constant(const Poly& p);
Poly p_add(const Poly& x, const Poly& y);
Poly p_sub(const Poly& x, const Poly& y);
Poly p_neg(const Poly& x);
Poly p_mul(const Poly& x, const Poly& y);
Poly p_scale(const Poly& x, const mpq_class& c);
Poly p_pow(const Poly& x, unsigned e);
int p_degree_in(const Poly& p, int sym);
bool p_depends_on(const Poly& p, int sym);
Poly p_substitute(const Poly& p, int sym, const mpq_class& value);

// Quotient f/g when the division is exact; nullopt otherwise.
std::optional<Poly> p_exact_div(const Poly& f, const Poly& g);

// Monic (leading coefficient 1) greatest common divisor; p_gcd(0,0) == 0.
Poly p_gcd(const Poly& f, const Poly& g);

std::string p_str(const Poly& p);

// Canonical fraction of polynomials.  Invariants: den != 0; gcd(num,den) is
// constant; den has leading coefficient exactly 1; num == 0 implies den == 1.
// Equality of canonical forms is literal equality of num and den.
struct Scalar {
  Poly num, den;

  Scalar();  // zero
  Scalar(int v);
  Scalar(long v);
  Scalar(const mpq_class& v);
  static Scalar symbol(int sym);
  static Scalar from_poly(Poly p);
  static Scalar fraction(Poly n, Poly d);  // throws std::domain_error if d == 0

  bool is_zero() const;
  bool is_one() const;
  bool is_constant() const;
  bool depends_on(int sym) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);  // throws on zero
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend bool operator==(const Scalar& x, const Scalar& y);
  friend bool operator!=(const Scalar& x, const Scalar& y);

  Scalar inverse() const;  // throws std::domain_error on zero
  Scalar pow(long e) const;

  // Partial substitution of one symbol by a rational value; nullopt when the
  // denominator vanishes under it.
  std::optional<Scalar> substituted(int sym, const mpq_class& value) const;
  // Full evaluation at a rational point; nullopt when the denominator
  // vanishes.
  std::optional<mpq_class> eval(
      const std::array<mpq_class, kNumSymbols>& point) const;

  std::string str() const;
};

// Parses the printed grammar: integers, symbols, + - * / ^ and parentheses,
// with left-associative * and /, and integer (possibly negative) exponents.
// Throws std::runtime_error on malformed input, std::domain_error on division
// by zero.
Scalar parse_scalar(const std::string& text);

Scalar qpow(long k);  // q^k for any sign of k

// The quantum number [k] = sum_{i=1..k} q^(2-2i) = (1 - q^(-2k))/(1 - q^(-2)),
// as an exact rational function; quantum_integer(0) == 0.
Scalar quantum_integer(int k);

}  // namespace qma
