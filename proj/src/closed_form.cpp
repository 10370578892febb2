#include "qdyn/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdyn {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// Shared subexpressions of the trajectory formulas. Every exponential kept
// here is decaying (tau >= 0), so all downstream terms stay bounded.
struct Kernel {
  double sigma, tau, em2, em4, theta, c, s, c2j, s2j;
  explicit Kernel(double t, const ClosedFormContext& x) {
    sigma = x.alpha + x.beta;
    tau = sigma * t;
    em2 = std::exp(-2.0 * tau);
    em4 = em2 * em2;
    theta = 2.0 * x.jd * t;
    c = std::cos(theta);
    s = std::sin(theta);
    c2j = std::cos(2.0 * x.J * t);
    s2j = std::sin(2.0 * x.J * t);
  }
};

void check_trajectory_domain(double t, const ClosedFormContext& x) {
  require_finite(t, "t");
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  if (x.B != 0.0) {
    throw std::invalid_argument("closed-form trajectories require B = 0");
  }
}

}  // namespace

ClosedFormContext make_context(const SpinChainParams& p, const EWLParams& q) {
  check_params(p);
  if (q.delta != 0.0) {
    throw std::invalid_argument("closed-form context requires delta = 0");
  }
  require_finite(q.r, "r");
  require_finite(q.a, "a");
  require_finite(q.b_abs, "b");
  if (q.r < 0.0 || q.r > 1.0) throw std::invalid_argument("r must lie in [0, 1]");
  if (q.a < 0.0 || q.a > 1.0 || q.b_abs < 0.0 || q.b_abs > 1.0 ||
      std::abs(q.a * q.a + q.b_abs * q.b_abs - 1.0) > 1e-12) {
    throw std::invalid_argument("amplitudes must satisfy a^2 + b^2 = 1");
  }
  ClosedFormContext x;
  x.alpha = p.gamma * (p.n + 1.0);
  x.beta = p.gamma * p.n;
  x.J = p.J;
  x.jd = p.J * p.Delta;
  x.B = p.B;
  x.r = q.r;
  x.a = q.a;
  x.b = q.b_abs;
  x.D = (x.alpha + x.beta) * (x.alpha + x.beta) + x.jd * x.jd;
  return x;
}

Mat closed_form_state(EwlKind kind, double t, const ClosedFormContext& x) {
  check_trajectory_domain(t, x);
  const Kernel k(t, x);
  const double al = x.alpha, be = x.beta, jd = x.jd, jd2 = jd * jd;
  const double r = x.r, a = x.a, b = x.b, D = x.D;
  const double a2 = a * a, b2 = b * b, amb = a2 - b2;
  const double dif = al - be;

  Mat rho = Mat::Zero(4, 4);
  if (kind == EwlKind::Phi) {
    // Populations: e^{-4tau} block + stationary block + e^{-2tau} oscillators.
    const double pop_outer = (1.0 - r) * dif * dif - 4.0 * al * be * r - r * jd2;
    rho(0, 0) = (pop_outer * k.em4 + (4.0 * be * be + jd2) +
                 2.0 * k.em2 * dif * (2.0 * be * k.c - jd * k.s)) /
                (4.0 * D);
    rho(3, 3) = (pop_outer * k.em4 + (4.0 * al * al + jd2) -
                 2.0 * k.em2 * dif * (2.0 * al * k.c - jd * k.s)) /
                (4.0 * D);
    const double pop_inner = (r - 1.0) * k.sigma * k.sigma + 4.0 * al * be + r * jd2;
    const double osc_shared = dif * dif * k.c;
    rho(1, 1) = (pop_inner * k.em4 + (4.0 * al * be + jd2) +
                 2.0 * k.em2 * (r * amb * D * k.c2j + osc_shared)) /
                (4.0 * D);
    rho(2, 2) = (pop_inner * k.em4 + (4.0 * al * be + jd2) +
                 2.0 * k.em2 * (-r * amb * D * k.c2j + osc_shared)) /
                (4.0 * D);
    rho(1, 2) = r * k.em2 * Cplx(a * b, 0.5 * k.s2j * amb);
    rho(0, 3) = Cplx(0.0, dif * ((jd * k.c + k.sigma * k.s) * k.em2 - jd) / (2.0 * D));
  } else {
    const double pop_outer =
        (1.0 - r) * dif * dif + 4.0 * r * (b2 * be * be + a2 * al * al) + r * jd2;
    rho(0, 0) = (pop_outer * k.em4 + (4.0 * be * be + jd2) +
                 2.0 * k.em2 *
                     (k.c * (2.0 * be * dif + r * amb * (2.0 * al * be + 2.0 * be * be + jd2)) -
                      jd * k.s * dif * (1.0 + r * amb))) /
                (4.0 * D);
    rho(3, 3) = (pop_outer * k.em4 + (4.0 * al * al + jd2) +
                 2.0 * k.em2 *
                     (k.c * (-2.0 * al * dif - r * amb * (2.0 * al * al + 2.0 * al * be + jd2)) +
                      jd * k.s * dif * (1.0 - r * amb))) /
                (4.0 * D);
    const double pop_inner =
        (r - 1.0) * dif * dif - 4.0 * r * (b2 * be * be + a2 * al * al) - r * jd2;
    const double mid = (pop_inner * k.em4 + (4.0 * al * be + jd2) +
                        2.0 * k.em2 *
                            (r * jd * k.s * dif * amb +
                             k.c * (dif * dif + r * amb * (al * al - be * be)))) /
                       (4.0 * D);
    rho(1, 1) = mid;
    rho(2, 2) = mid;
    rho(0, 3) = Cplx(2.0 * a * b * r * D * k.em2,
                     jd * dif * (k.em2 * k.c - 1.0) +
                         (al * al - be * be + r * amb * D) * k.em2 * k.s) /
                (2.0 * D);
  }
  rho(2, 1) = std::conj(rho(1, 2));
  rho(3, 0) = std::conj(rho(0, 3));
  return rho;
}

double closed_form_concurrence(EwlKind kind, double t, const ClosedFormContext& x) {
  const Mat rho = closed_form_state(kind, t, x);
  const double k1 = std::abs(rho(0, 3)) -
                    std::sqrt(std::max(0.0, rho(1, 1).real() * rho(2, 2).real()));
  const double k2 = std::abs(rho(1, 2)) -
                    std::sqrt(std::max(0.0, rho(0, 0).real() * rho(3, 3).real()));
  return 2.0 * std::max({0.0, k1, k2});
}

double closed_form_concurrence_pure(EwlKind kind, double t, const ClosedFormContext& x) {
  if (x.r != 1.0) {
    throw std::invalid_argument("pure-state concurrence kernels require r = 1");
  }
  check_trajectory_domain(t, x);
  const Kernel k(t, x);
  const double al = x.alpha, be = x.beta, jd = x.jd, jd2 = jd * jd;
  const double a = x.a, b = x.b, D = x.D;
  const double a2 = a * a, b2 = b * b, dif = al - be;

  // e^{-2tau}-scaled kernels: every term decays, so arbitrarily large t is
  // safe even though the raw kernels carry e^{+2tau} factors.
  const auto g1s = [&](double p, double q) {
    return (p - q) * (2.0 * p * k.c - jd * k.s) * k.em2 - (2.0 * p * p + 0.5 * jd2) +
           (2.0 * p * q + 0.5 * jd2) * k.em4;
  };
  if (kind == EwlKind::Phi) {
    const auto g3s = [&](double p, double q) {
      return D * (p * p - q * q) * k.c2j * k.em2 +
             0.5 * (1.0 + k.em4) * (jd2 + 4.0 * al * be) + dif * dif * k.c * k.em2;
    };
    const double g2s = dif * ((jd * k.c + k.sigma * k.s) * k.em2 - jd);
    const double k1 = k.em2 * std::sqrt(4.0 * a2 * b2 +
                                        (a2 - b2) * (a2 - b2) * k.s2j * k.s2j) -
                      std::sqrt(std::max(0.0, g1s(al, be) * g1s(be, al))) / D;
    const double k2 = (std::abs(g2s) - std::sqrt(std::max(0.0, g3s(a, b) * g3s(b, a)))) / D;
    return std::max({0.0, k1, k2});
  }
  const Cplx g4s(dif * jd * (1.0 - k.em2 * k.c) +
                     (2.0 * be * k.sigma + jd2 - 2.0 * D * a2) * k.em2 * k.s,
                 -2.0 * a * b * D * k.em2);
  const double g5s = 2.0 * (a2 * al * al + b2 * be * be) * (k.em2 * k.c - k.em4) +
                     2.0 * al * be * (1.0 - k.em2 * k.c) + 0.5 * jd2 * (1.0 - k.em4) +
                     jd * dif * (a2 - b2) * k.em2 * k.s;
  return std::max(0.0, (std::abs(g4s) - std::abs(g5s)) / D);
}

Mat steady_state_closed(const ClosedFormContext& x) {
  const double al = x.alpha, be = x.beta, jd = x.jd, jd2 = jd * jd, B = x.B;
  const double sg = al + be, sg2 = sg * sg;
  const double db = 4.0 * B * B + jd2 + sg2;
  const double den4 = 4.0 * sg2 * db;
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = (jd2 * sg2 + 4.0 * be * be * (4.0 * B * B + sg2)) / den4;
  rho(1, 1) = (jd2 * sg2 + 4.0 * al * be * (4.0 * B * B + sg2)) / den4;
  rho(2, 2) = rho(1, 1);
  rho(3, 3) = (16.0 * B * B * al * al + (jd2 + 4.0 * al * al) * sg2) / den4;
  rho(0, 3) = Cplx(0.0, -1.0) * jd * (al - be) * Cplx(sg, -2.0 * B) / (2.0 * sg * db);
  rho(3, 0) = std::conj(rho(0, 3));
  return rho;
}

double k_m(const ClosedFormContext& x) {
  const double al = x.alpha, be = x.beta, jd = x.jd, B = x.B;
  const double sg = al + be, sg2 = sg * sg;
  const double shift = 4.0 * B * B + sg2;
  return (2.0 * jd * (al * al - be * be) * std::sqrt(shift) - 4.0 * al * be * shift -
          jd * jd * sg2) /
         (2.0 * sg2 * (shift + jd * jd));
}

double final_concurrence(const ClosedFormContext& x) {
  return std::max(0.0, k_m(x));
}

double cmax_infinity(double n) {
  require_finite(n, "n");
  if (n < 0.0) throw std::invalid_argument("n must be >= 0");
  const double s = 1.0 + 2.0 * n;
  const double val = (std::sqrt(5.0 + 16.0 * n * (1.0 + n)) - (8.0 * n * n + 8.0 * n + 1.0)) /
                     (4.0 * s * s);
  return std::max(0.0, val);
}

namespace detail {

double g1(double alpha, double beta, double t, const ClosedFormContext& x) {
  const Kernel k(t, x);
  const double jd2 = x.jd * x.jd;
  return (alpha - beta) * (2.0 * alpha * k.c - x.jd * k.s) -
         (2.0 * alpha * alpha + 0.5 * jd2) * std::exp(2.0 * k.tau) +
         (2.0 * alpha * beta + 0.5 * jd2) * k.em2;
}

double g2(double t, const ClosedFormContext& x) {
  const Kernel k(t, x);
  return (x.alpha - x.beta) * (x.jd * k.c + k.sigma * k.s - x.jd * std::exp(2.0 * k.tau));
}

double g3(double a, double b, double t, const ClosedFormContext& x) {
  const Kernel k(t, x);
  return x.D * (a * a - b * b) * k.c2j +
         std::cosh(2.0 * k.tau) * (x.jd * x.jd + 4.0 * x.alpha * x.beta) +
         (x.alpha - x.beta) * (x.alpha - x.beta) * k.c;
}

double g4_abs(double t, const ClosedFormContext& x) {
  const Kernel k(t, x);
  const double re = (x.alpha - x.beta) * x.jd * (std::exp(2.0 * k.tau) - k.c) +
                    (2.0 * x.beta * k.sigma + x.jd * x.jd - 2.0 * x.D * x.a * x.a) * k.s;
  return std::hypot(re, 2.0 * x.a * x.b * x.D);
}

double g5(double t, const ClosedFormContext& x) {
  const Kernel k(t, x);
  const double a2 = x.a * x.a, b2 = x.b * x.b;
  return 2.0 * (a2 * x.alpha * x.alpha + b2 * x.beta * x.beta) * (k.c - k.em2) +
         2.0 * x.alpha * x.beta * (std::exp(2.0 * k.tau) - k.c) +
         x.jd * x.jd * std::sinh(2.0 * k.tau) +
         x.jd * (x.alpha - x.beta) * (a2 - b2) * k.s;
}

}  // namespace detail

}  // namespace qdyn
