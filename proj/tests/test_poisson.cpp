#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "qma/poisson.hpp"
#include "qma/qtensor.hpp"

using namespace qma;

namespace {

// Builds the quadratic polynomial sum_i c_i * x_{u_i} * x_{v_i} from 1-based
// (row, col) coordinate labels.
CommPoly quad(int n, const std::vector<std::tuple<long, int, int, int, int>>& ts) {
  CommPoly p;
  for (const auto& [c, r1, c1, r2, c2] : ts)
    p.add({(r1 - 1) * n + (c1 - 1), (r2 - 1) * n + (c2 - 1)}, c);
  return p;
}

mpq_class eval_scalar_at_q(const Scalar& s, const mpq_class& q0) {
  Poly num = p_substitute(s.num, SymQ, q0);
  Poly den = p_substitute(s.den, SymQ, q0);
  REQUIRE(p_is_constant(num));
  REQUIRE(p_is_constant(den));
  mpq_class nv = num.empty() ? mpq_class(0) : num.begin()->second;
  mpq_class dv = den.empty() ? mpq_class(0) : den.begin()->second;
  REQUIRE(dv != 0);
  return nv / dv;
}

RatMat seeded_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RatMat a = rat_zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      a[r][c] = mpq_class(static_cast<long>(rng() % 101) - 50,
                          1 + static_cast<long>(rng() % 9));
      a[r][c].canonicalize();
    }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("commutative polynomial arithmetic, evaluation, and rendering") {
  CommPoly p;
  p.add({3, 0}, 2);       // 2*x11*x22 (n=2 indices sorted on insert)
  p.add({3, 3}, -2);      // -2*x22^2
  CHECK(cp_render(p, 2) == "2*x11*x22 - 2*x22^2");
  CHECK(p.homogeneous_of_degree(2));
  CHECK_FALSE(p.is_zero());

  CommPoly q = mpq_class(-1) * p;
  CHECK(cp_render(q, 2) == "-2*x11*x22 + 2*x22^2");
  CHECK((p + q).is_zero());
  CHECK(cp_render(p + q, 2) == "0");
  CHECK(p - q == mpq_class(2) * p);

  // Cancellation through add.
  CommPoly r = p;
  r.add({0, 3}, -2);  // unsorted insert hits the same monomial
  CHECK(r == CommPoly::term({3, 3}, -2));

  // Evaluation at a matrix point.
  RatMat a = rat_zero(2, 2);
  a[0][0] = mpq_class(1, 2);
  a[1][1] = 3;
  CHECK(cp_eval(p, a, 2) == mpq_class(1, 2) * 3 * 2 - 2 * 9);  // -15
  CHECK(cp_eval(CommPoly::zero(), a, 2) == 0);

  // Mixed-degree polynomial is not homogeneous.
  CommPoly s = p;
  s.add({1}, 1);
  CHECK_FALSE(s.homogeneous_of_degree(2));
  CHECK(cp_render(s, 2) == "2*x11*x22 + 1*x12 - 2*x22^2");
}

TEST_CASE("classical tensors: antisymmetry, symmetry, flip identification") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    ClassicalTensors ct = make_classical_tensors(n);
    const int N = n * n;

    RatMat flip = rat_zero(N, N);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) flip[a * n + b][b * n + a] = 1;

    // omega is the index flip; conjugation by the flip swaps the tensor
    // factors, fixing omega and negating r.
    CHECK(ct.omega == flip);
    CHECK(rat_mul(flip, rat_mul(ct.r, flip)) ==
          rat_sub(rat_zero(N, N), ct.r));
    CHECK(rat_mul(flip, rat_mul(ct.omega, flip)) == ct.omega);

    // Entry content: r pairs lowering with raising units at weight ±1.
    mpq_class off = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) off += ct.r[i][j] * ct.r[i][j];
    CHECK(off == n * (n - 1));  // one +1 and one -1 per ordered root pair
  }
}

TEST_CASE("first-order model matches the exact structure matrix") {
  // S(q) = P + (q-1)*Psi + O((q-1)^2) with Psi = P(r+omega): at q = 1+e the
  // residual S - P - e*Psi is entrywise bounded by e^2 (exactly computable
  // here because every entry is q, 1, or q - 1/q).
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    ClassicalTensors ct = make_classical_tensors(n);
    const int N = n * n;
    RatMat flip = rat_zero(N, N);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) flip[a * n + b][b * n + a] = 1;
    RatMat psi = rat_mul(flip, rat_add(ct.r, ct.omega));

    Mat s = build_S(n);
    for (const mpq_class& eps : {mpq_class(1, 101), mpq_class(-1, 997)}) {
      CAPTURE(eps.get_str());
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
          mpq_class sv = eval_scalar_at_q(s.at(r, c), 1 + eps);
          mpq_class delta = sv - flip[r][c] - eps * psi[r][c];
          mpq_class bound = 2 * eps * eps;
          CHECK(delta <= bound);
          CHECK(-bound <= delta);
        }
    }
  }
}

TEST_CASE("extracted bracket table n=2 equals the frozen table") {
  PoissonTable t = extract_semiclassical(2);
  REQUIRE(t.n == 2);

  CHECK(t.at(0, 1) == quad(2, {{2, 1, 2, 2, 2}}));    // {x11,x12} = 2*x12*x22
  CHECK(t.at(0, 2) == quad(2, {{-2, 2, 1, 2, 2}}));   // {x11,x21} = -2*x21*x22
  CHECK(t.at(0, 3).is_zero());                        // {x11,x22} = 0
  CHECK(t.at(1, 2) ==
        quad(2, {{2, 1, 1, 2, 2}, {-2, 2, 2, 2, 2}}));  // 2*x11*x22 - 2*x22^2
  CHECK(t.at(1, 3) == quad(2, {{2, 1, 2, 2, 2}}));    // {x12,x22} = 2*x12*x22
  CHECK(t.at(2, 3) == quad(2, {{-2, 2, 1, 2, 2}}));   // {x21,x22} = -2*x21*x22

  CHECK(cp_render(t.at(1, 2), 2) == "2*x11*x22 - 2*x22^2");
  CHECK(cp_render(t.at(2, 1), 2) == "-2*x11*x22 + 2*x22^2");
}

TEST_CASE("extracted bracket anchors for n=3 and n=4") {
  PoissonTable t3 = extract_semiclassical(3);
  // {x12,x13} = -x12*x13
  CHECK(t3.at(1, 2) == quad(3, {{-1, 1, 2, 1, 3}}));
  // {x12,x21} = 2*x11*x22 + 2*x13*x31 - 2*x22^2 - 2*x23*x32
  CHECK(t3.at(1, 3) == quad(3, {{2, 1, 1, 2, 2},
                                {2, 1, 3, 3, 1},
                                {-2, 2, 2, 2, 2},
                                {-2, 2, 3, 3, 2}}));
  // {x22,x31} = 2*x21*x32
  CHECK(t3.at(4, 6) == quad(3, {{2, 2, 1, 3, 2}}));
  // {x11,x22} = 0
  CHECK(t3.at(0, 4).is_zero());
  CHECK(cp_render(t3.at(1, 2), 3) == "-1*x12*x13");

  PoissonTable t4 = extract_semiclassical(4);
  // {x11,x12} = 2*x12*x22 + 2*x13*x32 + 2*x14*x42
  CHECK(t4.at(0, 1) ==
        quad(4, {{2, 1, 2, 2, 2}, {2, 1, 3, 3, 2}, {2, 1, 4, 4, 2}}));
}

TEST_CASE("table invariants: antisymmetry, quadratic homogeneity, diagonal") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    PoissonTable t = extract_semiclassical(n);
    const int N = n * n;
    for (int u = 0; u < N; ++u) {
      CHECK(t.at(u, u).is_zero());
      for (int v = 0; v < N; ++v) {
        CHECK(t.at(u, v) == mpq_class(-1) * t.at(v, u));
        CHECK(t.at(u, v).homogeneous_of_degree(2));
      }
    }
  }
}

TEST_CASE("n=1 table is zero and out-of-range sizes are rejected") {
  PoissonTable t = extract_semiclassical(1);
  CHECK(t.at(0, 0).is_zero());
  CHECK(verify_jacobi(t));  // vacuous
  CHECK_THROWS_AS(extract_semiclassical(5), TooLarge);
  CHECK_THROWS_AS(extract_semiclassical(0), std::invalid_argument);
}

TEST_CASE("Jacobi identity holds identically for n=2,3 and fails perturbed") {
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    CHECK(verify_jacobi(extract_semiclassical(n)));
  }
  // Antisymmetric perturbation by x11^2 breaks Jacobi.
  PoissonTable t = extract_semiclassical(2);
  t.bracket[0][1].add({0, 0}, 1);
  t.bracket[1][0].add({0, 0}, -1);
  CHECK_FALSE(verify_jacobi(t));
}

TEST_CASE("trace coordinate is a polynomial Casimir of the table") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    PoissonTable t = extract_semiclassical(n);
    const int N = n * n;
    for (int v = 0; v < N; ++v) {
      CommPoly acc;
      for (int i = 0; i < n; ++i) acc = acc + t.at(i * n + i, v);
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("invariant part: frozen value, vanishing cases, bilinearity") {
  // A = diag(2,1), X = lowering unit, Y = raising unit: Tr(A^2[X,Y]) = -3.
  RatMat a = rat_zero(2, 2);
  a[0][0] = 2;
  a[1][1] = 1;
  RatMat x = rat_unit(2, 1, 0), y = rat_unit(2, 0, 1);
  CHECK(invariant_part(a, x, y) == -3);
  CHECK(invariant_part(a, y, x) == 3);

  // X = Y and A = identity both kill the invariant part.
  CHECK(invariant_part(a, x, x) == 0);
  RatMat m1 = seeded_matrix(3, 41), m2 = seeded_matrix(3, 42),
         m3 = seeded_matrix(3, 43);
  CHECK(invariant_part(rat_identity(3), m1, m2) == 0);
  CHECK(invariant_part(m3, m1, m1) == 0);

  // Bilinearity and antisymmetry at random rational matrices.
  mpq_class c(5, 3);
  RatMat xc = m1;
  for (auto& row : xc)
    for (auto& e : row) e *= c;
  CHECK(invariant_part(m3, xc, m2) == c * invariant_part(m3, m1, m2));
  CHECK(invariant_part(m3, rat_add(m1, m2), m2) ==
        invariant_part(m3, m1, m2) + invariant_part(m3, m2, m2));
  CHECK(invariant_part(m3, m1, m2) == -invariant_part(m3, m2, m1));

  CHECK_THROWS_AS(invariant_part(rat_zero(2, 2), rat_zero(3, 3), rat_zero(2, 2)),
                  ShapeMismatch);
}

TEST_CASE("invariant part is ad-invariant at diagonal points") {
  // Diagonal A commutes with diagonal D, so conjugating both arguments by D
  // leaves Tr(A^2 [X,Y]) unchanged.
  RatMat a = rat_zero(3, 3);
  a[0][0] = 3;
  a[1][1] = 5;
  a[2][2] = mpq_class(-7, 2);
  RatMat d = rat_zero(3, 3), dinv = rat_zero(3, 3);
  const mpq_class dv[3] = {2, 7, mpq_class(1, 3)};
  for (int i = 0; i < 3; ++i) {
    d[i][i] = dv[i];
    dinv[i][i] = 1 / dv[i];
  }
  RatMat x = seeded_matrix(3, 7), y = seeded_matrix(3, 8);
  RatMat xc = rat_mul(d, rat_mul(x, dinv));
  RatMat yc = rat_mul(d, rat_mul(y, dinv));
  CHECK(invariant_part(a, xc, yc) == invariant_part(a, x, y));
}

TEST_CASE("eigenvalue pair coefficient: values, dilation invariance, errors") {
  CHECK(reps_coefficient(2, 1) == 3);
  CHECK(reps_coefficient(mpq_class(5), mpq_class(-5)) == 0);
  CHECK(reps_coefficient(mpq_class(-7, 3), mpq_class(7, 3)) == 0);
  CHECK(reps_coefficient(7, 0) == 1);
  CHECK(reps_coefficient(mpq_class(-2, 9), 0) == 1);

  // (li + lj)/(li - lj) is invariant under simultaneous rescaling.
  const mpq_class pairs[3][2] = {{2, 1}, {mpq_class(5, 2), -3}, {7, 4}};
  for (const auto& pr : pairs)
    for (const mpq_class& nu : {mpq_class(3, 4), mpq_class(-5), mpq_class(12)})
      CHECK(reps_coefficient(nu * pr[0], nu * pr[1]) ==
            reps_coefficient(pr[0], pr[1]));

  CHECK_THROWS_AS(reps_coefficient(3, 3), DegenerateOrbit);
  CHECK_THROWS_AS(reps_coefficient(0, 0), DegenerateOrbit);
}

TEST_CASE("geometric bracket matches the table and the diagonal example") {
  // Diagonal-diagonal pair: the extracted entry is the zero polynomial and
  // the geometric value vanishes at sample points.
  PoissonTable t = extract_semiclassical(2);
  CHECK(t.at(0, 3).is_zero());
  for (std::uint64_t s : {11u, 12u, 13u}) {
    RatMat a = seeded_matrix(2, s);
    CHECK(geometric_bracket(2, 0, 3, a) == 0);
    CHECK(geometric_bracket(2, 1, 2, a) == cp_eval(t.at(1, 2), a, 2));
  }
  // Both brackets are quadratic, so they vanish at A = 0.
  CHECK(geometric_bracket(2, 1, 2, rat_zero(2, 2)) == 0);

  CHECK(verify_bracket_consistency(2));
  CHECK(verify_bracket_consistency(3));
  CHECK(verify_bracket_consistency(2, 987654321ull));
  CHECK_THROWS_AS(verify_bracket_consistency(4), TooLarge);
}

TEST_CASE("bracket table serializes to stable JSON") {
  PoissonTable t = extract_semiclassical(2);
  std::string js = t.to_json_string();
  CHECK(js ==
        "{\"n\":2,\"brackets\":{"
        "\"1,1|1,1\":\"0\",\"1,1|1,2\":\"2*x12*x22\","
        "\"1,1|2,1\":\"-2*x21*x22\",\"1,1|2,2\":\"0\","
        "\"1,2|1,1\":\"-2*x12*x22\",\"1,2|1,2\":\"0\","
        "\"1,2|2,1\":\"2*x11*x22 - 2*x22^2\",\"1,2|2,2\":\"2*x12*x22\","
        "\"2,1|1,1\":\"2*x21*x22\",\"2,1|1,2\":\"-2*x11*x22 + 2*x22^2\","
        "\"2,1|2,1\":\"0\",\"2,1|2,2\":\"-2*x21*x22\","
        "\"2,2|1,1\":\"0\",\"2,2|1,2\":\"-2*x12*x22\","
        "\"2,2|2,1\":\"2*x21*x22\",\"2,2|2,2\":\"0\"}}");

  // Parses as JSON with the expected shape.
  auto j = nlohmann::json::parse(js);
  CHECK(j["n"] == 2);
  CHECK(j["brackets"]["1,2|2,1"] == "2*x11*x22 - 2*x22^2");
  CHECK(j["brackets"].size() == 16);

  // Deterministic across repeated extraction.
  CHECK(extract_semiclassical(2).to_json_string() == js);
}
