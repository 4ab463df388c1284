#pragma once

// Concrete algebra presentations and the verification operations built on the
// degree-bounded ideal calculus: the matrix-bialgebra relations, the braided
// matrix algebra, their two-parameter and classical degenerations, the mixed
// algebra with an adjoined inverse family, the two-generator e/s algebra,
// orbit quotients with polynomial and trace conditions, the trace-conjugation
// and e/s-algebra lemmas, the fiber projection, the substitution chain, the
// rank-2 enveloping-algebra worked example, the brute-force rank-2 solution
// variety, and the classical evaluation oracle used as the flatness
// reference.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qma/engine.hpp"
#include "qma/qtensor.hpp"

namespace qma {

// ---------------------------------------------------------------------------
// Error taxonomy for the presentation layer.

struct TooLarge : std::length_error {
  using std::length_error::length_error;
};
struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BoundTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidPolynomial : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SamplingUnstable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateOrbit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Presentations.

enum class PresentationKind { FRT, RE, TwoParam, Classical, EST, MixedTL };

struct Presentation {
  std::string name;
  AlgebraDesc alg;
  int n = 0;  // matrix family size (0 for the e/s algebra)
  // Generator family bases by name: "T", "Tbar", "L", "E", or "e"/"s".
  std::map<std::string, int> bases;
  // Raw componentwise relations; identically-zero components are kept so the
  // count matches the defining tensor identity (n^4 for the quadratic matrix
  // relations).  The ideal engine drops zero rows itself.
  std::vector<FreeElt> relations;
  // Parameter scalars used by the relations, keyed by display name.
  std::map<std::string, Scalar> params;

  std::vector<FreeElt> live_relations() const {
    std::vector<FreeElt> out;
    for (const auto& r : relations)
      if (!r.empty()) out.push_back(r);
    return out;
  }
};

// Caps: a matrix family of size n uses n^2 of the 16 letters; the mixed
// presentation uses 3n^2 and is therefore only available at n = 2.
Presentation build_presentation(PresentationKind kind, int n);

// ---------------------------------------------------------------------------
// Orbit quotients: base presentation plus polynomial and trace relations.

enum class OrbitKind { Symmetric, Bisymmetric, Nilpotent, TwoParameter, KKS };

struct OrbitQuotientSpec {
  OrbitKind kind{};
  int n = 0;
  std::vector<int> multiplicities;
  std::vector<Scalar> eigenvalues;
  Presentation pres;  // base relations followed by the added conditions
};

// (L - lam)(L - mu) = 0 and Tr_q(L) = lam*[l] + mu*[m], on the braided matrix
// algebra with n = l + m.  The (l, lam) >= (m, mu) ordering of the labels is
// a bookkeeping convention; the emitted relations are symmetric in the pairs.
OrbitQuotientSpec make_symmetric_spec(int l, int m, const Scalar& lam,
                                      const Scalar& mu);

// L(L - lam)(L - mu) = 0, Tr_q(L) = lam*[l] + mu*[m], and
// Tr_q(L^2) = (lam + mu)(lam*[l] + mu*[m]) - lam*mu*[l + m], with
// n = l + m + k and k > 0 the kernel multiplicity.
OrbitQuotientSpec make_bisymmetric_spec(int l, int m, int k, const Scalar& lam,
                                        const Scalar& mu);

// L^2 = 0 and Tr_q(L) = 0: the square-zero orbit closure.
OrbitQuotientSpec make_nilpotent_spec(int n);

// (E - mu1)(E - mu2) = 0 and Tr_q(E) = [n1] mu1 + [n2] mu2 + t [n1][n2] on
// the two-parameter deformation, n = n1 + n2.
OrbitQuotientSpec make_two_parameter_spec(int n1, int n2, const Scalar& mu1,
                                          const Scalar& mu2);

// (E - mu1)(E - mu2) = 0 and Tr(E) = n1 mu1 + n2 mu2 + t n1 n2 on the
// classical enveloping algebra with the central extension parameter t.
OrbitQuotientSpec make_kks_spec(int n1, int n2, const Scalar& mu1,
                                const Scalar& mu2);

// ---------------------------------------------------------------------------
// Characters: evaluation of relations under generator -> scalar assignment.

// Substitutes generator g of a single matrix family by A(i, j) in every
// relation and checks that all of them vanish.  Throws ShapeMismatch when the
// presentation is not a single family of matching size.  For the braided
// matrix algebra the verdict provably coincides with check_numerical_re; the
// implementation cross-checks this and throws std::logic_error on internal
// disagreement.
bool verify_character(const Presentation& p, const Mat& A);

// Same evaluation over the quotient presentation: base relations plus the
// polynomial and trace conditions.
bool verify_orbit_character(const OrbitQuotientSpec& spec, const Mat& A);

// Evaluates a free element under assignment generator index -> scalar.
Scalar eval_free_elt(const FreeElt& e, const std::vector<Scalar>& assignment);

// ---------------------------------------------------------------------------
// Check records: every verification emits one; the CLI serializes them.

struct CheckRecord {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;  // ordered
  int bound = -1;
  bool pass = false;
  std::vector<std::string> witnesses;  // labels of failing identities
};

struct VerifyOptions {
  uint64_t seed = 12345;
  bool exact = false;  // skip the prime-field ladder, run fully symbolic
};

// Trace-conjugation lemma in the mixed T/Tbar/L algebra: the d parameter
// bounds the certificate padding |w1| + |w2| of the rows w1*g*w2 (all
// relations are quadratic, so memberships run at total degree d + 2).
// Verifies the twisted-trace identity, the polynomial identity for
// P in {x, x^2, x^2 - (lam + mu)x}, and that the ordinary-trace control
// stays outside the ideal.  Requires n = 2 (TooLarge otherwise) and d >= 4
// (BoundTooSmall otherwise: the quadratic-P target has degree 6).
CheckRecord verify_lemma_trp(int n, int d, const VerifyOptions& opts = {});

// e/s-algebra lemma: in the algebra with relations {eses = sese,
// s^2 = beta*s + 1, e*P(e) = alpha*e}, the element P(e) commutes with
// s e^m s for all m <= m_max, and with s P(e) s; the square identity
// P(e)^2 = alpha*P(e) is certified through the ideal (e*P(e) - alpha*e)
// alone.  p_coeffs[k] is the coefficient of x^k; P(0) must vanish
// (InvalidPolynomial).  All memberships run at total degree d
// (BoundTooSmall when the targets do not fit).
CheckRecord verify_lemma_alg(const std::vector<Scalar>& p_coeffs,
                             const Scalar& alpha, const Scalar& beta,
                             int m_max, int d, const VerifyOptions& opts = {});

// Fiber projection pi(E) = E^2 - (lam + mu)E out of the bisymmetric quotient
// with multiplicities (l, m, k): pi satisfies the braided-matrix relation,
// pi(pi + lam*mu) = 0 entrywise, and Tr_q(pi) = -lam*mu*[l + m], all as
// ideal memberships at total degree d; additionally checks the last two
// identities at the canonical two-eigenvalue character.  Requires d >= 5
// (BoundTooSmall) and (l + m + k)^2 <= 16 (TooLarge).
CheckRecord verify_fiber_map(int l, int m, int k, int d,
                             const VerifyOptions& opts = {});

// Exact substitution chain (no ideal quotient involved):
//   (a) substituting L = E + t/(1 - q^-2) into the braided-matrix relations
//       reproduces the two-parameter relations verbatim;
//   (b) the two-parameter relations at t = 0 are the braided-matrix
//       relations;
//   (c) their q -> 1 limit is the classical commutation rule, component by
//       component under the index transposition;
//   (d) the shifted quadratic (L - lam)(L - mu) with lam = mu1 + c,
//       mu = mu2 + c equals (E - mu1)(E - mu2), and the quantum-integer
//       identity c([n1] + [n2] - [n]) = t[n1][n2] holds for every split
//       n1 + n2 = n;
//   (e) the KKS quotient relations are the q -> 1 limit of the two-parameter
//       quotient relations (every coefficient is regular at q = 1).
CheckRecord verify_substitution(int n);

// Rank-2 enveloping-algebra worked example, all by ideal membership modulo
// the six commutation relations at total degree d (default cap 4):
//   (a) the quadratic system and its primed rewriting generate the same
//       degree-bounded ideal slice (both inclusions);
//   (b) the primed relations 2'-4' reduce through the linear condition 5';
//   (c) the central rewriting Tr(E^2) - (s1(s1 + t) - 2 s2) follows from
//       1' and 5', and holds as an exact free-element identity;
//   (d) Tr(E) and Tr(E^2) are central modulo the commutation relations;
//   (e) control: perturbing 5' by +1 breaks the reduction (b).
CheckRecord verify_gl2_example(int d, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Classical evaluation oracle: filtered dimensions of the coordinate ring of
// a conjugation orbit, by exact rational sampling.

// Samples >= 2 * #monomials(degree <= d) points g^-1 A0 g with seeded random
// integer g (entries 1..49, singular draws discarded), evaluates every
// matrix-entry monomial of degree <= d, and returns the rank per cumulative
// degree.  Ranks are computed exactly over two independent prime fields with
// independent samples and must agree; within each run a rank that changes
// when 25% more samples are added raises SamplingUnstable, and disagreement
// between the two runs does too.
std::vector<long> classical_matrix_orbit_dims(const Mat& A0, int d,
                                              uint64_t seed = 1);

// Same for the diagonalizable orbit diag(eigenvalues[i] with multiplicity
// multiplicities[i]); eigenvalue values must be pairwise distinct
// (DegenerateOrbit).
std::vector<long> classical_orbit_dims(int n,
                                       const std::vector<int>& multiplicities,
                                       const std::vector<mpq_class>& eigenvalues,
                                       int d, uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Brute-force rank-2 solution variety.

// Solves the numerical braided-matrix relation for a fully indeterminate
// 2x2 matrix by exact elimination: the sixteen quadratic components span
// exactly <wy, wz, w(x - w)> (checked symbolically in q and at three seeded
// rational q specializations), so the solution set is the union of the plane
// w = 0 and the line y = z = 0, x = w; each component is certified to
// contain a canonical solution-family member, stably under diagonal gauge.
CheckRecord verify_re_variety_n2(uint64_t seed = 12345);

}  // namespace qma
