#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qma/mat.hpp>
#include <qma/qtensor.hpp>

using namespace qma;

namespace {
Scalar S(const std::string& text) { return parse_scalar(text); }

Mat generic2() {
  Mat m(2, 2);
  m.at(0, 0) = Scalar::symbol(SymL1);
  m.at(0, 1) = Scalar::symbol(SymL2);
  m.at(1, 0) = Scalar::symbol(SymL3);
  m.at(1, 1) = Scalar::symbol(SymL4);
  return m;
}
}  // namespace

TEST_CASE("matrix arithmetic basics") {
  Mat A = generic2();
  Mat I = Mat::identity(2);
  CHECK(A * I == A);
  CHECK(I * A == A);
  CHECK(A + (-A) == Mat::zero(2, 2));
  CHECK((A * A) * A == A * (A * A));
  CHECK(A.transpose().transpose() == A);
  CHECK((A * A).trace() == (A.transpose() * A.transpose()).trace());
  CHECK(A.pow(3) == A * A * A);
  CHECK(A.pow(0) == I);
}

TEST_CASE("exact inverse and gauge transform") {
  Mat g(2, 2);
  g.at(0, 0) = Scalar(1);
  g.at(0, 1) = Scalar(2);
  g.at(1, 0) = Scalar(1);
  g.at(1, 1) = Scalar(3);
  auto gi = inverse(g);
  REQUIRE(gi.has_value());
  CHECK((*gi) * g == Mat::identity(2));
  CHECK(g * (*gi) == Mat::identity(2));
  Mat sing(2, 2);
  sing.at(0, 0) = Scalar(1);
  sing.at(1, 0) = Scalar(1);
  CHECK_FALSE(inverse(sing).has_value());

  Mat A = generic2();
  Mat B = gauge_transform(A, g);
  CHECK(B.trace() == A.trace());
  CHECK(charpoly(B) == charpoly(A));
}

TEST_CASE("kronecker index convention: first factor major") {
  // e^a_b (x) e^c_d must sit at row a*n+c, col b*n+d.
  for (int a_ = 0; a_ < 2; ++a_)
    for (int b_ = 0; b_ < 2; ++b_)
      for (int c_ = 0; c_ < 2; ++c_)
        for (int d_ = 0; d_ < 2; ++d_) {
          Mat k = kron(matrix_unit(2, a_, b_), matrix_unit(2, c_, d_));
          for (int r = 0; r < 4; ++r)
            for (int c2 = 0; c2 < 4; ++c2) {
              bool hit = (r == a_ * 2 + c_ && c2 == b_ * 2 + d_);
              CHECK(k.at(r, c2) == (hit ? Scalar(1) : Scalar(0)));
            }
        }
}

TEST_CASE("pair embeddings into the triple tensor power") {
  for (int n = 2; n <= 3; ++n) {
    Mat R = build_R(n);
    Mat I = Mat::identity(n);
    CHECK(embed_pair(R, n, 0, 1) == kron(R, I));
    CHECK(embed_pair(R, n, 1, 2) == kron(I, R));
    // Conjugating the middle-slot embedding by the outer flip gives slot 1-3.
    Mat P = build_P(n);
    Mat p12 = embed_pair(P, n, 0, 1);
    CHECK(embed_pair(R, n, 0, 2) == p12 * embed_pair(R, n, 1, 2) * p12);
  }
}

TEST_CASE("braid-form operator matches its closed form and P*R") {
  Scalar q = Scalar::symbol(SymQ);
  Scalar qq = q - qpow(-1);
  for (int n = 2; n <= 4; ++n) {
    Mat s = build_S(n);
    CHECK(s == build_P(n) * build_R(n));
    for (int a_ = 0; a_ < n; ++a_)
      for (int b_ = 0; b_ < n; ++b_)
        for (int c_ = 0; c_ < n; ++c_)
          for (int d_ = 0; d_ < n; ++d_) {
            Scalar expect;
            if (a_ == b_ && b_ == c_ && c_ == d_) expect += q;
            if (b_ == c_ && a_ == d_ && a_ != b_) expect += Scalar(1);
            if (a_ == c_ && b_ == d_ && a_ < b_) expect += qq;
            CHECK(s.at(a_ * n + b_, c_ * n + d_) == expect);
          }
  }
}

TEST_CASE("Hecke condition") {
  for (int n = 2; n <= 4; ++n) CHECK(check_hecke(build_S(n)));
  CHECK_FALSE(check_hecke(build_P(2) + build_P(2)));
}

TEST_CASE("Yang-Baxter and braid relations") {
  for (int n = 2; n <= 3; ++n) {
    CHECK(check_yang_baxter(build_R(n), n));
    CHECK(check_braid(build_S(n), n));
  }
  // The flip alone satisfies both (q -> 1 degeneration sanity).
  CHECK(check_yang_baxter(build_P(2), 2));
  // A perturbed operator must fail.
  Mat bad = build_R(2);
  bad.at(0, 0) += Scalar(1);
  CHECK_FALSE(check_yang_baxter(bad, 2));
}

TEST_CASE("weight matrix and quantum trace") {
  for (int n = 1; n <= 5; ++n) {
    Mat D = build_D(n);
    CHECK(D.at(0, 0) == Scalar(1));
    CHECK(quantum_trace(Mat::identity(n)) == quantum_integer(n));
  }
  Mat A = generic2();
  CHECK(quantum_trace(A) == S("l1") + qpow(-2) * S("l4"));
  CHECK(quantum_trace_power(A, 1) == quantum_trace(A));
  CHECK(quantum_trace_power(A, 2) == quantum_trace(A * A));
}

TEST_CASE("characteristic polynomial by exact recursion") {
  Mat A = generic2();
  auto c = charpoly(A);
  REQUIRE(c.size() == 3);
  CHECK(c[2] == Scalar(1));
  CHECK(c[1] == -(S("l1") + S("l4")));
  CHECK(c[0] == S("l1*l4 - l2*l3"));
  // Cayley-Hamilton for the generic 2x2.
  Mat ch = A * A + c[1] * A + c[0] * Mat::identity(2);
  CHECK(ch.is_zero());

  Mat B(3, 3);  // nilpotent single Jordan block
  B.at(0, 1) = Scalar(1);
  B.at(1, 2) = Scalar(1);
  auto cb = charpoly(B);
  CHECK(cb[0] == Scalar(0));
  CHECK(cb[1] == Scalar(0));
  CHECK(cb[2] == Scalar(0));
  CHECK(cb[3] == Scalar(1));
}
