#pragma once

// Dense complex linear algebra used by the rest of the library.
// Everything is a dynamically sized Eigen matrix of complex<double>;
// these wrappers add the checks and the deterministic conventions
// (eigenvalue ordering, eigenvector phase) that the solvers rely on.

#include <complex>
#include <functional>
#include <utility>

#include <Eigen/Dense>

namespace qdyn {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Kronecker product, entry ((i*rowsB + k), (j*colsB + l)) = A(i,j) * B(k,l).
Mat kron(const Mat& a, const Mat& b);

// exp(A) for square A via scaling-and-squaring with a fixed-order Pade
// approximant (Eigen's MatrixFunctions backend).
Mat matrix_exp(const Mat& a);

struct EigenDecomposition {
  Vec eigenvalues;          // sorted: descending real part, then ascending imag
  Mat eigenvectors;         // unit-norm columns, matching eigenvalue order
  double condition = 0.0;   // 2-norm condition number of the eigenvector matrix
  bool is_defective = false;
};

// General (non-Hermitian) complex eigendecomposition. Columns are normalized
// so the largest-magnitude component of each eigenvector is real and positive,
// which makes repeated runs reproducible. is_defective flags an eigenvector
// matrix whose condition number exceeds 1e8 (numerically unreliable basis).
EigenDecomposition eig_general(const Mat& a);

// Solve A x = b for square A. Throws std::runtime_error if A is singular to
// relative tolerance 1e-12.
Vec solve_linear(const Mat& a, const Vec& b);

// (A + A^dagger)/2 - projects out the anti-Hermitian numerical residue.
Mat hermitize(const Mat& a);

// Largest |entry| of A - A^dagger; zero for exactly Hermitian storage.
double hermiticity_defect(const Mat& a);

// Maximize a unimodal function on [lo, hi] by golden-section search.
// Returns {argmax, max}. tol is the absolute argument tolerance.
std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double tol = 1e-8);

}  // namespace qdyn
