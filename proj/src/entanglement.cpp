#include "qdyn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdyn {

namespace {

// sigma_y kron sigma_y, which is the real anti-diagonal (-1, 1, 1, -1).
const Mat& spin_flip() {
  static const Mat y = [] {
    Mat m = Mat::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return y;
}

// Square root of a PSD matrix; eigenvalues in [-1e-10, 0) are treated as the
// numerical zeros they are, anything lower is rejected.
Mat psd_sqrt(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("state is not positive semidefinite (eigenvalue below -1e-10)");
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

void check_two_qubit(const Mat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("concurrence is defined for 4x4 states");
  if (hermiticity_defect(rho) > 1e-10)
    throw std::invalid_argument("state must be Hermitian");
}

}  // namespace

double concurrence(const Mat& rho) {
  check_two_qubit(rho);
  const Mat h = hermitize(rho);
  const Mat s = psd_sqrt(h);
  // The Wootters lambda_i are the square roots of the eigenvalues of
  // rho Y rho^* Y. Those equal the singular values of sqrt(rho^*) Y sqrt(rho)
  // (adjoint-times-itself gives the similar matrix sqrt(rho) Y rho^* Y
  // sqrt(rho)), and the SVD delivers them at absolute accuracy ~1e-15 instead
  // of the ~1e-8 noise a sqrt of a near-zero eigenvalue would carry.
  const Mat m = s.conjugate() * spin_flip() * s;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double c = sv(0) - sv(1) - sv(2) - sv(3);
  return c > 0.0 ? c : 0.0;
}

double concurrence_x(const Mat& rho) {
  check_two_qubit(rho);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const bool x_entry = (i == j) || (i + j == 3);
      if (!x_entry && std::abs(rho(i, j)) > 1e-9)
        throw std::invalid_argument("concurrence_x: state is not X-structured");
    }
  const double p1 = rho(0, 0).real(), p2 = rho(1, 1).real();
  const double p3 = rho(2, 2).real(), p4 = rho(3, 3).real();
  const double k1 = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, p2 * p3));
  const double k2 = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, p1 * p4));
  return 2.0 * std::max({0.0, k1, k2});
}

double l1_coherence(const Mat& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("l1_coherence: matrix must be square");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

std::vector<EsdEvent> esd_events(const std::vector<double>& times,
                                 const std::vector<double>& series, double tol) {
  if (times.size() != series.size())
    throw std::invalid_argument("esd_events: times and series lengths differ");
  if (!(tol > 0.0)) throw std::invalid_argument("esd_events: tol must be positive");
  for (size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("esd_events: times must be strictly increasing");

  std::vector<EsdEvent> events;
  for (size_t k = 1; k < series.size(); ++k) {
    const double c0 = series[k - 1], c1 = series[k];
    const double dt = times[k] - times[k - 1];
    if (c0 > tol && c1 <= tol) {
      events.push_back({times[k - 1] + (c0 - tol) * dt / (c0 - c1), std::nullopt});
    } else if (c0 <= tol && c1 > tol) {
      // A rise with no unmatched death is the initial birth of entanglement,
      // not a revival; only pair it with a preceding death.
      if (!events.empty() && !events.back().revival_time)
        events.back().revival_time = times[k - 1] + (tol - c0) * dt / (c1 - c0);
    }
  }
  return events;
}

}  // namespace qdyn
