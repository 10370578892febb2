#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdyn/kbes.hpp"
#include "test_helpers.hpp"

using namespace qdyn;
using namespace qdyn::testing;

namespace {

Mat mat2(Cplx a, Cplx b, Cplx c, Cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

const Mat kSm = mat2(0, 0, 1, 0);  // |1><0|
const Mat kSp = mat2(0, 1, 0, 0);  // |0><1|
const Mat kSz = mat2(1, 0, 0, -1);

}  // namespace

TEST_SUITE("kbes") {

TEST_CASE("vectorize lays out rows in order") {
  Mat m = mat2({1, 1}, 2, {0, -3}, 4);
  Vec v = vectorize(m);
  REQUIRE(v.size() == 4);
  CHECK(v(0) == Cplx(1, 1));
  CHECK(v(1) == Cplx(2, 0));
  CHECK(v(2) == Cplx(0, -3));
  CHECK(v(3) == Cplx(4, 0));
}

TEST_CASE("vectorize of the identity") {
  Vec v = vectorize(Mat::Identity(2, 2));
  Vec expected(4);
  expected << 1, 0, 0, 1;
  CHECK(max_abs_diff(v, expected) == 0.0);
}

TEST_CASE("vectorize rejects non-square input") {
  std::mt19937 rng(2);
  CHECK_THROWS_AS(vectorize(random_matrix(rng, 2, 3)), std::invalid_argument);
}

TEST_CASE("devectorize basis vectors") {
  Vec e0 = Vec::Zero(4), e1 = Vec::Zero(4);
  e0(0) = 1;
  e1(1) = 1;
  Mat m0 = devectorize(e0);
  CHECK(m0(0, 0) == Cplx(1, 0));
  CHECK(m0.cwiseAbs().sum() == 1.0);
  Mat m1 = devectorize(e1);
  CHECK(m1(0, 1) == Cplx(1, 0));
  CHECK(m1.cwiseAbs().sum() == 1.0);
}

TEST_CASE("devectorize rejects non-square lengths") {
  CHECK_THROWS_AS(devectorize(Vec::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(devectorize(Vec::Zero(8)), std::invalid_argument);
}

TEST_CASE("vectorize/devectorize round trips") {
  std::mt19937 rng(17);
  Mat rho = random_matrix(rng, 4, 4);
  CHECK(max_abs_diff(devectorize(vectorize(rho)), rho) == 0.0);
  Vec v = random_matrix(rng, 16, 1).col(0);
  CHECK(max_abs_diff(vectorize(devectorize(v)), v) == 0.0);
}

TEST_CASE("left_mult_super of the identity is the identity") {
  CHECK(max_abs_diff(left_mult_super(Mat::Identity(2, 2)), Mat::Identity(4, 4)) == 0.0);
}

TEST_CASE("left_mult_super of diag(1,2)") {
  Mat s = left_mult_super(mat2(1, 0, 0, 2));
  Vec expected(4);
  expected << 1, 1, 2, 2;
  CHECK(max_abs_diff(Vec(s.diagonal()), expected) == 0.0);
  CHECK(max_abs_diff(s, Mat(expected.asDiagonal())) == 0.0);
}

TEST_CASE("left_mult_super realizes A rho on random states") {
  std::mt19937 rng(29);
  Mat rho = random_matrix(rng, 2, 2);
  Mat got = devectorize(left_mult_super(kSp) * vectorize(rho));
  CHECK(max_abs_diff(got, Mat(kSp * rho)) <= 1e-15);
}

TEST_CASE("right_mult_super of the identity is the identity") {
  CHECK(max_abs_diff(right_mult_super(Mat::Identity(2, 2)), Mat::Identity(4, 4)) == 0.0);
}

TEST_CASE("right_mult_super realizes rho B on random states") {
  std::mt19937 rng(31);
  Mat rho = random_matrix(rng, 2, 2);
  Mat got = devectorize(right_mult_super(kSm) * vectorize(rho));
  CHECK(max_abs_diff(got, Mat(rho * kSm)) <= 1e-15);
}

TEST_CASE("left and right actions compose to A rho B") {
  std::mt19937 rng(37);
  Mat a = random_matrix(rng, 3, 3);
  Mat b = random_matrix(rng, 3, 3);
  Mat rho = random_matrix(rng, 3, 3);
  Vec got = left_mult_super(a) * (right_mult_super(b) * vectorize(rho));
  CHECK(max_abs_diff(got, vectorize(Mat(a * rho * b))) <= 1e-13);
}

TEST_CASE("identity transfer between the ket and the doubling mode") {
  // For real A, the action of A on the ket space applied to vec(I) equals the
  // daggered action of its copy on the doubling mode: both give vec(A).
  std::mt19937 rng(41);
  Mat a(3, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
  Vec eta = vectorize(Mat::Identity(3, 3));
  Vec lhs = left_mult_super(a) * eta;
  Vec rhs = Mat(right_mult_super(a.transpose()).adjoint()) * eta;
  CHECK(max_abs_diff(lhs, rhs) <= 1e-15);
  CHECK(max_abs_diff(lhs, vectorize(a)) <= 1e-15);
}

TEST_CASE("build_liouvillian with no generator terms is zero") {
  auto f = build_liouvillian(Mat::Zero(2, 2), {});
  CHECK(f.dim == 2);
  CHECK(f.matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single decay channel at weight 2 has spectrum {0,-1,-1,-2}") {
  auto f = build_liouvillian(Mat::Zero(2, 2), {{kSm, 2.0}});
  auto ed = eig_general(f.matrix);
  Vec expected(4);
  expected << 0, -1, -1, -2;
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ed.eigenvalues(i) - expected(i)) <= 1e-12);
}

TEST_CASE("pure Hamiltonian sigma_z generator has spectrum {0,0,+-2i}") {
  auto f = build_liouvillian(kSz, {});
  auto ed = eig_general(f.matrix);
  std::vector<double> im;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(ed.eigenvalues(i).real()) <= 1e-12);
    im.push_back(ed.eigenvalues(i).imag());
  }
  std::sort(im.begin(), im.end());
  CHECK(std::abs(im[0] + 2.0) <= 1e-12);
  CHECK(std::abs(im[1]) <= 1e-12);
  CHECK(std::abs(im[2]) <= 1e-12);
  CHECK(std::abs(im[3] - 2.0) <= 1e-12);
}

TEST_CASE("the generator annihilates trace and preserves Hermiticity") {
  std::mt19937 rng(53);
  Mat h = random_hermitian(rng, 4);
  std::vector<DissipationChannel> ch = {{random_matrix(rng, 4, 4), 0.7},
                                        {random_matrix(rng, 4, 4), 1.3}};
  auto f = build_liouvillian(h, ch);
  for (int trial = 0; trial < 5; ++trial) {
    Mat rho = random_hermitian(rng, 4);
    Mat img = devectorize(f.matrix * vectorize(rho));
    CHECK(std::abs(img.trace()) <= 1e-12);
    CHECK(hermiticity_defect(img) <= 1e-12);
  }
}

TEST_CASE("build_liouvillian is linear in H and in channel weights") {
  std::mt19937 rng(59);
  Mat h1 = random_hermitian(rng, 3), h2 = random_hermitian(rng, 3);
  Mat l = random_matrix(rng, 3, 3);

  Mat sum_h = build_liouvillian(Mat(h1 + h2), {}).matrix;
  Mat split_h = build_liouvillian(h1, {}).matrix + build_liouvillian(h2, {}).matrix;
  CHECK(max_abs_diff(sum_h, split_h) <= 1e-12);

  Mat w_sum = build_liouvillian(Mat::Zero(3, 3), {{l, 2.1}}).matrix;
  Mat w_split = build_liouvillian(Mat::Zero(3, 3), {{l, 1.4}}).matrix +
                build_liouvillian(Mat::Zero(3, 3), {{l, 0.7}}).matrix;
  CHECK(max_abs_diff(w_sum, w_split) <= 1e-12);

  Mat joint = build_liouvillian(h1, {{l, 1.4}}).matrix;
  Mat parts = build_liouvillian(h1, {}).matrix + build_liouvillian(Mat::Zero(3, 3), {{l, 1.4}}).matrix;
  CHECK(max_abs_diff(joint, parts) <= 1e-12);
}

TEST_CASE("bilinear channels follow the cross-term formula") {
  std::mt19937 rng(61);
  Mat ln = random_matrix(rng, 2, 2), lm = random_matrix(rng, 2, 2);
  const double w = 0.8;
  auto f = build_liouvillian(Mat::Zero(2, 2), {{ln, w, lm}});
  Mat mdl = lm.adjoint() * ln;
  Mat expected = w * (kron(ln, lm.conjugate()) -
                      0.5 * left_mult_super(mdl) - 0.5 * right_mult_super(mdl));
  CHECK(max_abs_diff(f.matrix, expected) == 0.0);

  // A conjugate pair of cross terms is again trace-annihilating and
  // Hermiticity-preserving.
  auto fp = build_liouvillian(Mat::Zero(2, 2), {{ln, w, lm}, {lm, w, ln}});
  Mat rho = random_hermitian(rng, 2);
  Mat img = devectorize(fp.matrix * vectorize(rho));
  CHECK(std::abs(img.trace()) <= 1e-12);
  CHECK(hermiticity_defect(img) <= 1e-12);
}

TEST_CASE("build_liouvillian rejects invalid input") {
  std::mt19937 rng(67);
  Mat nonherm = random_matrix(rng, 2, 2);
  nonherm(0, 1) = nonherm(1, 0) + Cplx(0.5, 0);  // decisively non-Hermitian
  CHECK_THROWS_AS(build_liouvillian(nonherm, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_liouvillian(Mat::Zero(2, 2), {{kSm, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_liouvillian(Mat::Zero(2, 2), {{random_matrix(rng, 3, 3), 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_liouvillian(Mat::Zero(2, 2), {{kSm, 1.0, random_matrix(rng, 3, 3)}}),
                  std::invalid_argument);
}

}  // TEST_SUITE
