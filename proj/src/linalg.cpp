#include "qdyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

namespace qdyn {

Mat kron(const Mat& a, const Mat& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Mat out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Mat matrix_exp(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("matrix_exp: matrix must be square");
  return a.exp();
}

EigenDecomposition eig_general(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eig_general: matrix must be square");
  const Eigen::Index n = a.rows();

  Eigen::ComplexEigenSolver<Mat> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_general: eigensolver did not converge");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const Cplx li = solver.eigenvalues()(i), lj = solver.eigenvalues()(j);
    if (li.real() != lj.real()) return li.real() > lj.real();
    return li.imag() < lj.imag();
  });

  EigenDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d.eigenvalues(k) = solver.eigenvalues()(order[k]);
    Vec v = solver.eigenvectors().col(order[k]);
    v.normalize();
    // Fix the free phase: rotate so the largest-magnitude component (first of
    // them on ties) comes out real and positive.
    Eigen::Index imax = 0;
    double big = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = std::abs(v(i));
      if (m > big) {
        big = m;
        imax = i;
      }
    }
    if (big > 0.0) v *= std::conj(v(imax)) / big;
    d.eigenvectors.col(k) = v;
  }

  Eigen::JacobiSVD<Mat> svd(d.eigenvectors);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  d.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  d.is_defective = !(d.condition < 1e8);
  return d;
}

Vec solve_linear(const Mat& a, const Vec& b) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("solve_linear: matrix must be square");
  if (b.size() != a.rows())
    throw std::invalid_argument("solve_linear: right-hand side has wrong length");

  Eigen::FullPivLU<Mat> lu(a);
  // Full pivoting sorts the pivot magnitudes in decreasing order, so the
  // last/first ratio is a cheap condition estimate; gate singularity there.
  const Eigen::Index n = a.rows();
  double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::abs(lu.matrixLU()(i, i));
    pmax = std::max(pmax, p);
    pmin = std::min(pmin, p);
  }
  if (pmax == 0.0 || pmin < 1e-12 * pmax)
    throw std::runtime_error("solve_linear: matrix is singular to tolerance 1e-12");
  return lu.solve(b);
}

Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

double hermiticity_defect(const Mat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_max: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_max: need tol > 0");

  // Coarse scan first: pure golden-section assumes strict unimodality, but
  // clamped objectives (max(g, 0)) are flat wherever g < 0 and probe ties on
  // the flat stretch would discard the bracket. The scan pins the maximum to
  // one grid cell; the section search then refines inside it.
  constexpr int kScan = 33;
  double a = lo, b = hi;
  {
    int best = 0;
    double fbest = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScan; ++i) {
      const double x = lo + (hi - lo) * (static_cast<double>(i) / (kScan - 1));
      const double fx = f(x);
      if (fx > fbest) {
        fbest = fx;
        best = i;
      }
    }
    const double step = (hi - lo) / (kScan - 1);
    a = std::max(lo, lo + (best - 1) * step);
    b = std::min(hi, lo + (best + 1) * step);
  }

  const double w = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - w * (b - a);
  double d = a + w * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - w * (b - a);
      fc = f(c);
    } else if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + w * (b - a);
      fd = f(d);
    } else {
      // exact tie: with the maximum already bracketed it lies between the
      // probes, so both edges contract
      a = c;
      b = d;
      c = b - w * (b - a);
      d = a + w * (b - a);
      fc = f(c);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace qdyn
