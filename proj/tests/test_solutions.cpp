#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qma/qtensor.hpp>
#include <qma/solutions.hpp>

using namespace qma;

namespace {

// Coefficients of x^(n-l-m) (x-lam)^l (x-mu)^m, ascending.
std::vector<Scalar> expected_charpoly(int n, int l, int m, const Scalar& lam,
                                      const Scalar& mu) {
  std::vector<Scalar> c = {Scalar(1)};
  auto mul_root = [&c](const Scalar& r) {
    std::vector<Scalar> out(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      out[i + 1] += c[i];
      out[i] -= r * c[i];
    }
    c = out;
  };
  for (int i = 0; i < l; ++i) mul_root(lam);
  for (int i = 0; i < m; ++i) mul_root(mu);
  for (int i = 0; i < n - l - m; ++i) mul_root(Scalar(0));
  return c;
}

}  // namespace

TEST_CASE("symmetric family satisfies the reflection equation") {
  Scalar lam = parse_scalar("a^2"), mu = parse_scalar("b^2");
  Scalar coupling = parse_scalar("a*b");
  for (int n = 2; n <= 3; ++n) {
    Mat s = build_S(n);
    for (int l = 0; l <= n; ++l)
      for (int m = 0; m <= l && l + m <= n; ++m) {
        Mat A = solution_symmetric(n, l, m, lam, mu, coupling);
        CAPTURE(n);
        CAPTURE(l);
        CAPTURE(m);
        CHECK(check_numerical_re(s, A));
        CHECK(charpoly(A) == expected_charpoly(n, l, m, lam, mu));
      }
  }
}

TEST_CASE("symmetric family needs coupling^2 == lam*mu") {
  // With l == m an arbitrary coupling merely reparameterizes the two
  // eigenvalues, so the constraint becomes visible only for l > m >= 1.
  Mat A = solution_symmetric(3, 2, 1, parse_scalar("a^2"),
                             parse_scalar("b^2"), Scalar::symbol(SymT));
  CHECK_FALSE(check_numerical_re(build_S(3), A));
  // The eigenvalue blocks are ordered: mu on the trailing slot fails.
  Mat swapped(2, 2);
  swapped.at(0, 0) = parse_scalar("a^2");
  swapped.at(0, 1) = parse_scalar("a*b");
  swapped.at(1, 0) = parse_scalar("-a*b");
  swapped.at(1, 1) = parse_scalar("b^2");
  CHECK_FALSE(check_numerical_re(build_S(2), swapped));
}

TEST_CASE("index pair enumeration counts binomial(2n, n)") {
  CHECK(enumerate_index_pairs(1).size() == 2);
  CHECK(enumerate_index_pairs(2).size() == 6);
  CHECK(enumerate_index_pairs(3).size() == 20);
  CHECK(enumerate_index_pairs(4).size() == 70);
}

TEST_CASE("decreasing bijection and admissible window") {
  for (int n = 2; n <= 4; ++n) {
    for (const IndexPair& p : enumerate_index_pairs(n)) {
      // sigma is the decreasing bijection: ascending y maps to descending z.
      for (int k = 0; k + 1 < p.size(); ++k)
        CHECK(p.sigma(p.y[k]) > p.sigma(p.y[k + 1]));
      // The window is always nonempty.
      CHECK(p.window_lower() < p.window_upper(n));
      CHECK(p.window_lower() >= 0);
      CHECK(p.window_upper(n) <= n + 1);
    }
  }
}

TEST_CASE("specific windows") {
  // Single jump above the diagonal (0-based y={0} -> z={1}).
  IndexPair up{{0}, {1}};
  CHECK(up.window_lower() == 1);
  CHECK(up.window_upper(2) == 2);
  // Single jump below the diagonal.
  IndexPair down{{1}, {0}};
  CHECK(down.window_lower() == 1);
  CHECK(down.window_upper(2) == 2);
  // Empty pair: every length is allowed.
  IndexPair empty{{}, {}};
  CHECK(empty.window_lower() == 0);
  CHECK(empty.window_upper(3) == 4);
}

TEST_CASE("triangular family satisfies the reflection equation") {
  Scalar lam = Scalar::symbol(SymL1);
  for (int n = 2; n <= 3; ++n) {
    Mat s = build_S(n);
    for (const IndexPair& p : enumerate_index_pairs(n)) {
      if (!p.triangular_ok(n)) continue;
      for (int l = p.window_lower(); l < p.window_upper(n); ++l) {
        Mat B = solution_triangular(n, p, l, lam);
        CAPTURE(n);
        CAPTURE(l);
        CHECK(check_numerical_re(s, B));
        CHECK(charpoly(B) == expected_charpoly(n, l, 0, lam, Scalar(0)));
        // Vanishing eigenvalue makes the matrix square-zero.
        Mat N = solution_triangular(n, p, l, Scalar(0));
        CHECK((N * N).is_zero());
      }
    }
  }
}

TEST_CASE("projector length outside the window breaks the equation") {
  // lam*1 + e^0_1 corresponds to length 2, one past the window.
  IndexPair up{{0}, {1}};
  Mat bad = solution_triangular(2, up, 2, Scalar::symbol(SymL1));
  CHECK_FALSE(check_numerical_re(build_S(2), bad));
}
