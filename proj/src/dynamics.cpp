#include "qdyn/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qdyn/entanglement.hpp"

namespace qdyn {

namespace {

void check_liouvillian(const Liouvillian& f) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(f.dim) * f.dim;
  if (f.dim <= 0 || f.matrix.rows() != n2 || f.matrix.cols() != n2)
    throw std::invalid_argument("Liouvillian dimensions are inconsistent");
}

void check_density(const Mat& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("state dimension does not match the Liouvillian");
  if (hermiticity_defect(rho) > 1e-10)
    throw std::invalid_argument("initial state is not Hermitian");
  if (std::abs(rho.trace() - Cplx(1.0)) > 1e-10)
    throw std::invalid_argument("initial state does not have unit trace");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(rho));
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("initial state is not positive semidefinite");
}

}  // namespace

Trajectory propagate(const Liouvillian& f, const Mat& rho0, const std::vector<double>& times) {
  check_liouvillian(f);
  check_density(rho0, f.dim);
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : times) {
    if (!(t >= 0.0) || !(t > prev))
      throw std::invalid_argument("propagate: times must be nonnegative and strictly increasing");
    prev = t;
  }

  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());
  const Vec v0 = vectorize(rho0);
  for (double t : times) {
    const Mat ft = f.matrix * t;
    Mat rho = devectorize(matrix_exp(ft) * v0);
    if (hermiticity_defect(rho) > 1e-10)
      throw std::runtime_error("propagate: evolution lost Hermiticity");
    rho = hermitize(rho);
    tr.l1_coherence.push_back(l1_coherence(rho));
    if (f.dim == 4) {
      tr.concurrence.push_back(concurrence(rho));
      tr.populations.push_back({rho(0, 0).real(), rho(1, 1).real(),
                                rho(2, 2).real(), rho(3, 3).real()});
      tr.rho14.push_back(rho(0, 3));
      tr.rho23.push_back(rho(1, 2));
    }
    tr.states.push_back(std::move(rho));
  }
  return tr;
}

SpectralSolution spectral_solve(const Liouvillian& f, const Mat& rho0) {
  check_liouvillian(f);
  check_density(rho0, f.dim);
  EigenDecomposition d = eig_general(f.matrix);
  if (d.is_defective)
    throw std::runtime_error("spectral_solve: Liouvillian has no reliable eigenbasis "
                             "(eigenvector condition number exceeds 1e8)");
  Vec c = solve_linear(d.eigenvectors, vectorize(rho0));
  return SpectralSolution{f.dim, std::move(d.eigenvalues), std::move(d.eigenvectors),
                          std::move(c)};
}

Mat evaluate(const SpectralSolution& s, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evaluate: time must be nonnegative");
  const Vec w = s.modes * (s.coefficients.array() * (s.eigenvalues.array() * t).exp()).matrix();
  return hermitize(devectorize(w));
}

Mat steady_state(const Liouvillian& f) {
  check_liouvillian(f);
  const EigenDecomposition d = eig_general(f.matrix);
  std::vector<Eigen::Index> nulls;
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i)
    if (std::abs(d.eigenvalues(i)) <= 1e-9) nulls.push_back(i);
  if (nulls.empty())
    throw std::runtime_error("steady_state: no eigenvalue within 1e-9 of zero");
  if (nulls.size() > 1) throw DegenerateSteadyStateError(static_cast<int>(nulls.size()));

  Mat rho = devectorize(d.eigenvectors.col(nulls.front()));
  const Cplx tr = rho.trace();
  if (std::abs(tr) < 1e-10)
    throw std::runtime_error("steady_state: null mode is traceless, cannot normalize");
  rho /= tr;
  rho = hermitize(rho);

  if ((f.matrix * vectorize(rho)).norm() > 1e-9)
    throw std::runtime_error("steady_state: residual exceeds 1e-9");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::runtime_error("steady_state: result is not positive semidefinite");
  return rho;
}

Vec spectrum(const Liouvillian& f) {
  check_liouvillian(f);
  return eig_general(f.matrix).eigenvalues;
}

}  // namespace qdyn
