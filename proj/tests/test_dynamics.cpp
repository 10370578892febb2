#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdyn/closed_form.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/model.hpp"
#include "test_helpers.hpp"

using namespace qdyn;
using namespace qdyn::testing;

namespace {

// Single-qubit pure-decay fixture: H = 0, one channel sigma_minus at weight 2
// (gamma = 1, n = 0). In this convention the decaying level is |0>.
Liouvillian decay_fixture() {
  return build_liouvillian(Mat::Zero(2, 2), {{sigma_minus(), 2.0}});
}

Mat excited_state() {
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 1.0;
  return rho;
}

SpinChainParams resonant_params() {
  SpinChainParams p;
  p.B = 0.0;
  p.J = 1.0;
  p.Delta = 1.0;  // J*Delta = 1
  p.Jz = 0.0;
  p.gamma = 1.0;
  p.n = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("propagate at t=0 returns the initial state") {
  std::mt19937 rng(101);
  auto f = model_liouvillian(resonant_params());
  Mat rho0 = random_density(rng, 4);
  auto tr = propagate(f, rho0, {0.0});
  REQUIRE(tr.states.size() == 1);
  CHECK(max_abs_diff(tr.states[0], rho0) <= 1e-14);
}

TEST_CASE("single-qubit decay population follows e^{-2t}") {
  auto f = decay_fixture();
  auto tr = propagate(f, excited_state(), {0.5, 1.0, 2.0});
  for (size_t i = 0; i < tr.times.size(); ++i) {
    const double expect = std::exp(-2.0 * tr.times[i]);
    CHECK(std::abs(tr.states[i](0, 0).real() - expect) <= 1e-10);
    CHECK(std::abs(tr.states[i](1, 1).real() - (1.0 - expect)) <= 1e-10);
  }
}

TEST_CASE("two-qubit trajectory matches the closed-form reference") {
  auto p = resonant_params();
  auto q = make_ewl(EwlKind::Phi, 1.0, 1.0 / std::sqrt(2.0));
  auto f = model_liouvillian(p);
  auto ctx = make_context(p, q);
  std::vector<double> times = {0.3, 1.0, 2.5};
  auto tr = propagate(f, ewl_density(q), times);
  for (size_t i = 0; i < times.size(); ++i) {
    Mat ref = closed_form_state(EwlKind::Phi, times[i], ctx);
    CHECK(max_abs_diff(tr.states[i], ref) <= 1e-8);
  }
}

TEST_CASE("trajectory carries the derived series") {
  auto q = make_ewl(EwlKind::Phi, 1.0, 1.0 / std::sqrt(2.0));
  auto f = model_liouvillian(resonant_params());
  auto tr = propagate(f, ewl_density(q), {0.0, 1.0});
  REQUIRE(tr.concurrence.size() == 2);
  REQUIRE(tr.l1_coherence.size() == 2);
  REQUIRE(tr.populations.size() == 2);
  REQUIRE(tr.rho14.size() == 2);
  REQUIRE(tr.rho23.size() == 2);
  // Bell state at t = 0: C = 1, l1 = 1, populations (0, 1/2, 1/2, 0).
  CHECK(std::abs(tr.concurrence[0] - 1.0) <= 1e-12);
  CHECK(std::abs(tr.l1_coherence[0] - 1.0) <= 1e-12);
  CHECK(std::abs(tr.populations[0][1] - 0.5) <= 1e-12);
  CHECK(std::abs(tr.populations[0][2] - 0.5) <= 1e-12);
  CHECK(std::abs(tr.rho23[0] - Cplx(0.5, 0)) <= 1e-12);
  CHECK(std::abs(tr.rho14[0]) <= 1e-12);
}

TEST_CASE("propagate validates times and state") {
  auto f = decay_fixture();
  Mat rho0 = excited_state();
  CHECK_THROWS_AS(propagate(f, rho0, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(f, rho0, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(f, rho0, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(f, Mat::Zero(4, 4), {0.5}), std::invalid_argument);
  Mat not_unit = 2.0 * excited_state();
  CHECK_THROWS_AS(propagate(f, not_unit, {0.5}), std::invalid_argument);
}

TEST_CASE("spectral_solve reproduces the initial state at t=0") {
  std::mt19937 rng(103);
  auto f = model_liouvillian(resonant_params());
  Mat rho0 = random_density(rng, 4);
  auto s = spectral_solve(f, rho0);
  CHECK(max_abs_diff(evaluate(s, 0.0), rho0) <= 1e-8);
}

TEST_CASE("spectral expansion of diagonal single-qubit data uses two modes") {
  auto f = decay_fixture();
  Mat rho0 = Mat::Zero(2, 2);
  rho0(0, 0) = 0.3;
  rho0(1, 1) = 0.7;
  auto s = spectral_solve(f, rho0);
  int active = 0;
  bool has_zero = false, has_minus_two = false;
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) {
    if (std::abs(s.coefficients(i)) > 1e-10) {
      ++active;
      if (std::abs(s.eigenvalues(i)) <= 1e-12) has_zero = true;
      if (std::abs(s.eigenvalues(i) + 2.0) <= 1e-12) has_minus_two = true;
    }
  }
  CHECK(active == 2);
  CHECK(has_zero);
  CHECK(has_minus_two);
}

TEST_CASE("spectral expansion decays to the steady state") {
  std::mt19937 rng(107);
  auto f = model_liouvillian(resonant_params());
  auto s = spectral_solve(f, random_density(rng, 4));
  CHECK(max_abs_diff(evaluate(s, 50.0), steady_state(f)) <= 1e-8);
}

TEST_CASE("spectral_solve agrees with propagate along a trajectory") {
  std::mt19937 rng(109);
  SpinChainParams p;
  p.B = 0.8;
  p.J = 1.3;
  p.Delta = 0.4;
  p.Jz = -0.6;
  p.gamma = 1.0;
  p.n = 0.15;
  auto f = model_liouvillian(p);
  Mat rho0 = random_density(rng, 4);
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) times.push_back(0.05 + 0.5 * i);
  auto s = spectral_solve(f, rho0);
  auto tr = propagate(f, rho0, times);
  for (size_t i = 0; i < times.size(); ++i)
    CHECK(max_abs_diff(evaluate(s, times[i]), tr.states[i]) <= 1e-8);
}

TEST_CASE("single-qubit steady state is the decay target") {
  Mat rho = steady_state(decay_fixture());
  CHECK(std::abs(rho(1, 1).real() - 1.0) <= 1e-10);
  CHECK(std::abs(rho(0, 0)) <= 1e-10);
}

TEST_CASE("uncoupled zero-temperature chain settles in basis state 4") {
  auto p = resonant_params();
  p.Delta = 0.0;  // J*Delta = 0
  Mat rho = steady_state(model_liouvillian(p));
  Mat expected = Mat::Zero(4, 4);
  expected(3, 3) = 1.0;
  CHECK(max_abs_diff(rho, expected) <= 1e-10);
}

TEST_CASE("resonant-pair steady state carries a -i/4 coherence") {
  Mat rho = steady_state(model_liouvillian(resonant_params()));
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = 0.125;
  expected(1, 1) = 0.125;
  expected(2, 2) = 0.125;
  expected(3, 3) = 0.625;
  expected(0, 3) = Cplx(0, -0.25);
  expected(3, 0) = Cplx(0, 0.25);
  CHECK(max_abs_diff(rho, expected) <= 1e-10);
}

TEST_CASE("steady_state reports degeneracy and missing null modes") {
  auto zero_gen = build_liouvillian(Mat::Zero(2, 2), {});
  CHECK_THROWS_AS(steady_state(zero_gen), DegenerateSteadyStateError);
  try {
    steady_state(zero_gen);
  } catch (const DegenerateSteadyStateError& e) {
    CHECK(e.multiplicity == 4);
  }
  Liouvillian gapped{2, Mat(-Mat::Identity(4, 4))};
  CHECK_THROWS_AS(steady_state(gapped), std::runtime_error);
}

TEST_CASE("spectrum of the zero generator is all zeros") {
  auto f = build_liouvillian(Mat::Zero(2, 2), {});
  Vec s = spectrum(f);
  CHECK(s.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectrum of the decay fixture is {0,-1,-1,-2}") {
  Vec s = spectrum(decay_fixture());
  Vec expected(4);
  expected << 0, -1, -1, -2;
  CHECK(max_abs_diff(s, expected) <= 1e-12);
}

TEST_CASE("model spectra are stable with a unique null mode") {
  std::mt19937 rng(113);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    SpinChainParams p;
    p.B = 3.0 * u(rng);
    p.J = 3.0 * u(rng);
    p.Delta = 2.0 * u(rng) - 1.0;
    p.Jz = 4.0 * u(rng) - 2.0;
    p.gamma = 0.5 + u(rng);
    p.n = u(rng);
    Vec s = spectrum(model_liouvillian(p));
    int nulls = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      CHECK(s(i).real() <= 1e-10);
      if (std::abs(s(i)) <= 1e-9) ++nulls;
    }
    CHECK(nulls == 1);
    // ordering: descending real part, ties by ascending imaginary part
    for (Eigen::Index i = 0; i + 1 < s.size(); ++i) {
      CHECK(s(i).real() >= s(i + 1).real() - 1e-12);
      if (s(i).real() == s(i + 1).real()) CHECK(s(i).imag() <= s(i + 1).imag());
    }
  }
}

TEST_CASE("trajectories stay completely positive and trace preserving") {
  std::mt19937 rng(127);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    SpinChainParams p;
    p.B = 3.0 * u(rng);
    p.J = 3.0 * u(rng);
    p.Delta = 2.0 * u(rng) - 1.0;
    p.Jz = 4.0 * u(rng) - 2.0;
    p.gamma = 0.5 + u(rng);
    p.n = u(rng);
    auto f = model_liouvillian(p);
    Mat rho0 = random_density(rng, 4);
    auto tr = propagate(f, rho0, {0.1, 1.0, 3.0, 10.0});
    for (const Mat& rho : tr.states) {
      CHECK(std::abs(rho.trace() - Cplx(1.0)) <= 1e-10);
      CHECK(hermiticity_defect(rho) <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Mat> es(rho);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("propagation satisfies the semigroup property") {
  std::mt19937 rng(131);
  auto f = model_liouvillian(resonant_params());
  Mat rho0 = random_density(rng, 4);
  const double t1 = 0.7, t2 = 1.9;
  Mat direct = propagate(f, rho0, {t1 + t2}).states[0];
  Mat mid = propagate(f, rho0, {t1}).states[0];
  Mat stepped = propagate(f, mid, {t2}).states[0];
  CHECK(max_abs_diff(direct, stepped) <= 1e-8);
}

}  // TEST_SUITE
