#include "qdyn/kbes.hpp"

#include <cmath>
#include <stdexcept>

namespace qdyn {

Vec vectorize(const Mat& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("vectorize: matrix must be square");
  const Eigen::Index n = rho.rows();
  Vec v(n * n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) v(m * n + k) = rho(m, k);
  return v;
}

Mat devectorize(const Vec& v) {
  const auto len = static_cast<double>(v.size());
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(len)));
  if (n * n != v.size())
    throw std::invalid_argument("devectorize: length is not a perfect square");
  Mat rho(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) rho(m, k) = v(m * n + k);
  return rho;
}

Mat left_mult_super(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("left_mult_super: matrix must be square");
  return kron(a, Mat::Identity(a.rows(), a.rows()));
}

Mat right_mult_super(const Mat& b) {
  if (b.rows() != b.cols())
    throw std::invalid_argument("right_mult_super: matrix must be square");
  return kron(Mat::Identity(b.rows(), b.rows()), b.transpose());
}

Liouvillian build_liouvillian(const Mat& h, const std::vector<DissipationChannel>& channels) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("build_liouvillian: Hamiltonian must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-12 * scale)
    throw std::invalid_argument("build_liouvillian: Hamiltonian is not Hermitian");

  const Eigen::Index n = h.rows();
  Mat f = Cplx(0.0, -1.0) * (left_mult_super(h) - right_mult_super(h));
  for (const auto& ch : channels) {
    if (ch.op.rows() != n || ch.op.cols() != n)
      throw std::invalid_argument("build_liouvillian: channel dimension mismatch");
    if (!(ch.weight >= 0.0))
      throw std::invalid_argument("build_liouvillian: channel weight must be nonnegative");
    const Mat& co = ch.co.size() != 0 ? ch.co : ch.op;
    if (co.rows() != n || co.cols() != n)
      throw std::invalid_argument("build_liouvillian: channel dimension mismatch");
    const Mat mdl = co.adjoint() * ch.op;  // M^dag L
    f += ch.weight * (kron(ch.op, co.conjugate()) -
                      0.5 * left_mult_super(mdl) - 0.5 * right_mult_super(mdl));
  }
  return Liouvillian{static_cast<int>(n), std::move(f)};
}

}  // namespace qdyn
