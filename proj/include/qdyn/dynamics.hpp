#pragma once

// Time evolution and spectral analysis of a Liouvillian.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdyn/kbes.hpp"

namespace qdyn {

struct Trajectory {
  std::vector<double> times;
  std::vector<Mat> states;  // re-Hermitized density matrices, one per time

  // Derived per-point series. l1_coherence is filled for every dimension;
  // the rest only when the states are two-qubit (4x4).
  std::vector<double> concurrence;
  std::vector<double> l1_coherence;
  std::vector<std::array<double, 4>> populations;  // rho11..rho44
  std::vector<Cplx> rho14, rho23;
};

// Evolve rho0 through exp(F t) at each requested time (times must be
// nonnegative and strictly increasing). Each state is computed from a fresh
// matrix exponential -- no step-to-step error accumulation -- and the
// anti-Hermitian numerical residue (checked to stay below 1e-10) is projected
// out before the state is recorded.
Trajectory propagate(const Liouvillian& f, const Mat& rho0, const std::vector<double>& times);

// rho(t) = sum_i c_i exp(lambda_i t) R_i with R_i the devectorized right
// eigenvectors of F and c the expansion coefficients of vec(rho0).
struct SpectralSolution {
  int dim = 0;
  Vec eigenvalues;
  Mat modes;         // right eigenvectors (columns), eig_general ordering
  Vec coefficients;
};

// Throws std::runtime_error if F is defective (no reliable eigenbasis).
SpectralSolution spectral_solve(const Liouvillian& f, const Mat& rho0);

Mat evaluate(const SpectralSolution& s, double t);

struct DegenerateSteadyStateError : std::runtime_error {
  int multiplicity;
  explicit DegenerateSteadyStateError(int m)
      : std::runtime_error("steady state is not unique: " + std::to_string(m) +
                           " eigenvalues within 1e-9 of zero"),
        multiplicity(m) {}
};

// The stationary density matrix, from the null space of F (|lambda| <= 1e-9),
// normalized to unit trace. Never obtained by long-time propagation. Throws
// DegenerateSteadyStateError when the zero eigenvalue is not simple and
// std::runtime_error when there is none or the null vector is traceless.
Mat steady_state(const Liouvillian& f);

// All eigenvalues of F, sorted by descending real part, then ascending
// imaginary part.
Vec spectrum(const Liouvillian& f);

}  // namespace qdyn
