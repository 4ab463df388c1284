#pragma once

#include <vector>

#include "qma/mat.hpp"

namespace qma {

// Tensor-square operators on an n-dimensional space, with composite index
// (i1, i2) -> i1*n + i2 (first factor major, 0-based).

// R-matrix of the standard quantum deformation:
//   R = q sum_i e^i_i (x) e^i_i  +  sum_{i != j} e^i_i (x) e^j_j
//       + (q - q^-1) sum_{i < k} e^k_i (x) e^i_k.
Mat build_R(int n);

// Flip operator P = sum_{i,j} e^i_j (x) e^j_i.
Mat build_P(int n);

// Braid-form operator S = P * R.  Closed form:
//   S[(a,b)][(c,d)] = q [a=b=c=d] + [b=c][a=d][a!=b]
//                     + (q - q^-1) [a=c][b=d][a<b].
Mat build_S(int n);

// Weight matrix D = diag(q^0, q^-2, ..., q^(-2n+2)); the quantum trace is
// Tr_q(A) = Tr(D A), and Tr_q(1) equals the quantum integer for n.
Mat build_D(int n);

// First/second tensor leg amplification: A (x) 1 and 1 (x) A.
Mat amp_first(const Mat& A);
Mat amp_second(const Mat& A);

// Hecke condition: S^2 - (q - q^-1) S - 1 == 0.
bool check_hecke(const Mat& S);

// Yang-Baxter equation R12 R13 R23 == R23 R13 R12 on the triple tensor power.
bool check_yang_baxter(const Mat& R, int n);

// Braid relation S1 S2 S1 == S2 S1 S2.
bool check_braid(const Mat& S, int n);

Scalar quantum_trace(const Mat& A);
Scalar quantum_trace_power(const Mat& A, unsigned k);

// Reflection-equation check for a matrix A with scalar entries:
//   S A2 S A2 == A2 S A2 S, where A2 = 1 (x) A.
bool check_numerical_re(const Mat& S, const Mat& A);

// Characteristic polynomial det(x*1 - A) by the Faddeev-LeVerrier recursion;
// returns coefficients c[0..n] with p(x) = sum_k c[k] x^k and c[n] = 1.
std::vector<Scalar> charpoly(const Mat& A);

}  // namespace qma
