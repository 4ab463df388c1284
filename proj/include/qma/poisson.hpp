#pragma once

// Semiclassical layer.  Replacing the structure matrix of the braided matrix
// relations by its first-order model P + h·P(r+ω) and reading off the
// h-linear coefficients turns the commutative coordinate ring of n×n
// matrices into a Poisson algebra with a homogeneous quadratic bracket on
// coordinates.  This module extracts that bracket table exactly, verifies
// antisymmetry and the Jacobi identity as polynomial identities, and
// cross-checks the table against an independently built geometric bracket:
// the adjoint action of the classical r-matrix tensor plus an invariant
// part.  All computation here is over plain rationals; the deformation
// parameter enters only as a formal bookkeeping symbol during extraction.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qma/presentations.hpp"

namespace qma {

// ---------------------------------------------------------------------------
// Rational matrices (the classical layer works over Q directly).

using RatMat = std::vector<std::vector<mpq_class>>;

RatMat rat_zero(int rows, int cols);
RatMat rat_identity(int n);
// Matrix unit: 1 at (row i, column j), 0 elsewhere.
RatMat rat_unit(int n, int i, int j);
// Standard matrix product (rows of x against columns of y).
RatMat rat_mul(const RatMat& x, const RatMat& y);
RatMat rat_add(const RatMat& x, const RatMat& y);
RatMat rat_sub(const RatMat& x, const RatMat& y);
// Commutator x·y − y·x.
RatMat rat_comm(const RatMat& x, const RatMat& y);
mpq_class rat_trace(const RatMat& m);

// ---------------------------------------------------------------------------
// Commutative polynomials in the n² coordinate functions x_0 .. x_{n²−1},
// where x_{i·n+j} is the matrix entry at row i, column j.  A monomial is
// stored as the sorted multiset of its variable indices.

struct CommPoly {
  std::map<std::vector<int>, mpq_class> terms;

  static CommPoly zero() { return {}; }
  static CommPoly term(std::vector<int> mono, const mpq_class& c);
  // Adds c times the monomial (indices need not be pre-sorted).
  void add(std::vector<int> mono, const mpq_class& c);
  bool is_zero() const { return terms.empty(); }
  // True when every monomial has total degree d (zero is homogeneous).
  bool homogeneous_of_degree(int d) const;

  friend CommPoly operator+(const CommPoly& x, const CommPoly& y);
  friend CommPoly operator-(const CommPoly& x, const CommPoly& y);
  friend CommPoly operator*(const mpq_class& c, const CommPoly& x);
  friend bool operator==(const CommPoly& x, const CommPoly& y) {
    return x.terms == y.terms;
  }
  friend bool operator!=(const CommPoly& x, const CommPoly& y) {
    return !(x == y);
  }
};

// Evaluates p at the matrix point a (substituting x_{i·n+j} -> a[i][j]).
mpq_class cp_eval(const CommPoly& p, const RatMat& a, int n);

// Renders with 1-based coordinate names in a fixed term order, e.g.
// "2*x11*x22 - 2*x22^2"; the zero polynomial renders as "0".
std::string cp_render(const CommPoly& p, int n);

// ---------------------------------------------------------------------------
// Classical tensor data of the standard structure, in operator form on the
// composite index space: the coefficient of the simple tensor
// e_{pq} ⊗ e_{st} sits at entry [(p,s)][(q,t)] (row-major composite
// indices).  r is antisymmetric under the tensor-factor swap, ω symmetric;
// ω coincides with the index flip under this identification.

struct ClassicalTensors {
  int n = 0;
  RatMat r, omega;  // n² × n²
};

ClassicalTensors make_classical_tensors(int n);

// ---------------------------------------------------------------------------
// The semiclassical bracket table: entry (u, v) holds {x_u, x_v}, a
// homogeneous quadratic polynomial with exact (in fact integer) rational
// coefficients.

struct PoissonTable {
  int n = 0;
  std::vector<std::vector<CommPoly>> bracket;  // [u][v], u,v in [0, n²)

  const CommPoly& at(int u, int v) const;
  // Key "i,j|k,l" (1-based) naming the ordered pair ({x^i_j, x^k_l}).
  static std::string pair_key(int n, int u, int v);
  // {"n": n, "brackets": {"i,j|k,l": rendered polynomial, ...}} with the
  // keys in row-major pair order; byte-stable for a given table.
  std::string to_json_string() const;
};

// Builds the braided relation components with the structure matrix replaced
// by its first-order model P + h·P(r+ω), h a formal parameter.  Each
// component then reads  x_p·x_q − x_q·x_p + h·B + O(h²), and the bracket is
// {x_p, x_q} = −(commutative image of B) — the orientation given by
// {u,v} = lim_{h→0} (uv − vu)/h in the deformed algebra.  Construction
// invariants (each h⁰ part a plain commutator, table antisymmetry, entries
// homogeneous quadratic with integer coefficients) are checked internally.
// Throws TooLarge for n > 4.
PoissonTable extract_semiclassical(int n);

// Invariant part of the geometric bracket: Tr(A²·[X, Y]).
mpq_class invariant_part(const RatMat& a, const RatMat& x, const RatMat& y);

// Coefficient (li + lj)/(li − lj) attached to an ordered pair of distinct
// eigenvalues; invariant under simultaneous rescaling of both arguments.
// Throws DegenerateOrbit when li == lj.
mpq_class reps_coefficient(const mpq_class& li, const mpq_class& lj);

// Jacobi identity {x_p,{x_q,x_r}} + {x_q,{x_r,x_p}} + {x_r,{x_p,x_q}} == 0
// for every generator triple, checked as an exact polynomial identity via
// the Leibniz extension of the table.
bool verify_jacobi(const PoissonTable& t);

// Geometric bracket of the coordinate functions x_u, x_v at the matrix
// point A, built from ClassicalTensors: the r tensor acts through
// commutator vector fields on the linear coordinate functions (coordinate
// x^m_i pairing with the matrix unit E(i,m) via f(A) = Tr(E(i,m)·A)), and
// the invariant part enters alongside; the overall orientation matches the
// deformation convention of extract_semiclassical.
mpq_class geometric_bracket(int n, int u, int v, const RatMat& a);

// Compares the extracted table against geometric_bracket at `points` seeded
// random rational matrices — every coordinate pair, plus the trace
// coordinate Σ_i x^i_i against every coordinate.  Throws TooLarge for
// n > 3.
bool verify_bracket_consistency(int n, std::uint64_t seed = 12345,
                                int points = 10);

}  // namespace qma
