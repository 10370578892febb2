#include "qdyn/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qdyn {

namespace {

Mat make2(Cplx a00, Cplx a01, Cplx a10, Cplx a11) {
  Mat m(2, 2);
  m << a00, a01, a10, a11;
  return m;
}

}  // namespace

const Mat& sigma_x() {
  static const Mat m = make2(0, 1, 1, 0);
  return m;
}
const Mat& sigma_y() {
  static const Mat m = make2(0, Cplx(0, -1), Cplx(0, 1), 0);
  return m;
}
const Mat& sigma_z() {
  static const Mat m = make2(1, 0, 0, -1);
  return m;
}
const Mat& sigma_plus() {  // |0><1|
  static const Mat m = make2(0, 1, 0, 0);
  return m;
}
const Mat& sigma_minus() {  // |1><0|
  static const Mat m = make2(0, 0, 1, 0);
  return m;
}
const Mat& id2() {
  static const Mat m = Mat::Identity(2, 2);
  return m;
}

void check_params(const SpinChainParams& p) {
  for (double v : {p.B, p.J, p.Delta, p.Jz, p.gamma, p.n})
    if (!std::isfinite(v))
      throw std::invalid_argument("model parameters must be finite");
  if (!(p.gamma > 0.0))
    throw std::invalid_argument("bath coupling gamma must be positive");
  if (p.n < 0.0)
    throw std::invalid_argument("thermal occupation n must be nonnegative");
}

std::vector<std::string> param_warnings(const SpinChainParams& p) {
  std::vector<std::string> w;
  if (std::abs(p.Delta) >= 1.0)
    w.push_back("anisotropy |Delta| >= 1 is outside the benchmarked range; "
                "results depend only on the product J*Delta");
  return w;
}

Mat xyz_hamiltonian(const SpinChainParams& p) {
  check_params(p);
  const Mat sz1 = kron(sigma_z(), id2()), sz2 = kron(id2(), sigma_z());
  const Mat flip = kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus());
  const Mat pair = kron(sigma_plus(), sigma_plus()) + kron(sigma_minus(), sigma_minus());
  return p.B * (sz1 + sz2) + p.J * flip + p.J * p.Delta * pair + p.Jz * sz1 * sz2;
}

std::vector<DissipationChannel> thermal_dissipators(const SpinChainParams& p) {
  check_params(p);
  const double alpha = p.gamma * (p.n + 1.0);
  const double beta = p.gamma * p.n;
  std::vector<DissipationChannel> ch;
  ch.push_back({kron(sigma_minus(), id2()), 2.0 * alpha});
  ch.push_back({kron(id2(), sigma_minus()), 2.0 * alpha});
  if (beta > 0.0) {
    ch.push_back({kron(sigma_plus(), id2()), 2.0 * beta});
    ch.push_back({kron(id2(), sigma_plus()), 2.0 * beta});
  }
  return ch;
}

Liouvillian model_liouvillian(const SpinChainParams& p) {
  return build_liouvillian(xyz_hamiltonian(p), thermal_dissipators(p));
}

EWLParams make_ewl(EwlKind kind, double r, double a, double delta) {
  const double b2 = 1.0 - a * a;
  return EWLParams{kind, r, a, b2 > 0.0 ? std::sqrt(b2) : 0.0, delta};
}

Mat ewl_density(const EWLParams& q) {
  for (double v : {q.r, q.a, q.b_abs, q.delta})
    if (!std::isfinite(v))
      throw std::invalid_argument("ewl_density: parameters must be finite");
  if (q.r < 0.0 || q.r > 1.0)
    throw std::invalid_argument("ewl_density: purity r must be in [0, 1]");
  if (q.a < 0.0 || q.a > 1.0 || q.b_abs < 0.0 || q.b_abs > 1.0)
    throw std::invalid_argument("ewl_density: amplitudes must be in [0, 1]");
  if (std::abs(q.a * q.a + q.b_abs * q.b_abs - 1.0) > 1e-12)
    throw std::invalid_argument("ewl_density: amplitudes must satisfy a^2 + |b|^2 = 1");

  const Cplx b = std::polar(q.b_abs, q.delta);
  Vec psi = Vec::Zero(4);
  if (q.kind == EwlKind::Phi) {
    psi(1) = q.a;  // |01>
    psi(2) = b;    // |10>
  } else {
    psi(0) = q.a;  // |00>
    psi(3) = b;    // |11>
  }
  Mat rho = q.r * (psi * psi.adjoint());
  rho += (1.0 - q.r) / 4.0 * Mat::Identity(4, 4);
  return rho;
}

}  // namespace qdyn
