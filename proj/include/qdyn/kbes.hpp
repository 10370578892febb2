#pragma once

// Density-matrix vectorization and the Liouvillian superoperator.
//
// Convention: rho = sum_mn rho_mn |m><n| maps to the row-major column vector
// |rho> with component m*N + n equal to rho_mn. Under this map
//
//     A rho B   <->   kron(A, B^T) |rho>,
//
// so left multiplication is A kron I and right multiplication is I kron B^T.
// The master equation d rho/dt = L[rho] then becomes the linear ODE
// d|rho>/dt = F |rho> with F built below, and everything downstream
// (propagation, spectra, steady states) is plain matrix algebra on F.

#include <vector>

#include "qdyn/linalg.hpp"

namespace qdyn {

Vec vectorize(const Mat& rho);

// Inverse of vectorize; the vector length must be a perfect square.
Mat devectorize(const Vec& v);

Mat left_mult_super(const Mat& a);   // A kron I
Mat right_mult_super(const Mat& b);  // I kron B^T

// One term of the generator's dissipative part, in the general bilinear form
//
//     weight * (L rho M^dag - 1/2 M^dag L rho - 1/2 rho M^dag L),
//
// with L = op and M = co. Leaving co empty (the common case) sets M = L and
// gives the standard channel weight * (L rho L^dag - 1/2 {L^dag L, rho}).
// Off-diagonal terms (co != op) preserve Hermiticity only when they appear in
// conjugate pairs (L, M), (M, L) of equal weight.
struct DissipationChannel {
  Mat op;
  double weight = 0.0;
  Mat co;  // empty means co = op

  DissipationChannel() = default;
  DissipationChannel(Mat op_, double weight_, Mat co_ = Mat())
      : op(std::move(op_)), weight(weight_), co(std::move(co_)) {}
};

struct Liouvillian {
  int dim = 0;  // Hilbert-space dimension N; matrix is N^2 x N^2
  Mat matrix;
};

// F = -i (H kron I - I kron H^T)
//     + sum_k w_k [ kron(L_k, conj(M_k))
//                   - 1/2 (M_k^dag L_k) kron I - 1/2 I kron (M_k^dag L_k)^T ].
//
// H must be Hermitian to 1e-12 and every weight nonnegative; dimension
// mismatches and violations throw std::invalid_argument. For diagonal
// channels (M = L) the result annihilates the trace functional and preserves
// Hermiticity, so propagation keeps density matrices physical.
Liouvillian build_liouvillian(const Mat& h, const std::vector<DissipationChannel>& channels);

}  // namespace qdyn
