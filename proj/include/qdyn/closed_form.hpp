#pragma once

// Closed-form reference solutions for the dissipative XYZ model with
// EWL-class initial states. These are independent of the numeric engine (no
// Liouvillian is ever built here) and exist to cross-validate it.
//
// Domain: the time-dependent expressions hold for B = 0 and initial phase
// delta = 0 with gamma-scaled rates alpha = gamma(n+1), beta = gamma n. The
// steady-state expressions additionally cover B != 0. Out-of-domain requests
// throw std::invalid_argument.

#include "qdyn/model.hpp"

namespace qdyn {

struct ClosedFormContext {
  double alpha = 1.0;   // gamma (n + 1)
  double beta = 0.0;    // gamma n
  double J = 1.0;       // XY exchange (enters only the Phi-branch oscillators)
  double jd = 0.0;      // the product J * Delta
  double B = 0.0;       // field; must be 0 for the trajectory expressions
  double r = 1.0;       // EWL purity
  double a = 0.0;       // EWL amplitudes, real (delta = 0)
  double b = 1.0;
  double D = 1.0;       // (alpha + beta)^2 + (J Delta)^2
};

ClosedFormContext make_context(const SpinChainParams& p, const EWLParams& q);

// The X-structured state at time t >= 0 for the given initial-state branch.
// Requires ctx.B == 0 (the expressions were derived without the field).
Mat closed_form_state(EwlKind kind, double t, const ClosedFormContext& ctx);

// Concurrence of closed_form_state, evaluated directly from the closed-form
// entries (valid for any r in [0,1]).
double closed_form_concurrence(EwlKind kind, double t, const ClosedFormContext& ctx);

// The r = 1 special case written with the G-kernels below; agrees with
// closed_form_concurrence whenever ctx.r == 1.
double closed_form_concurrence_pure(EwlKind kind, double t, const ClosedFormContext& ctx);

// Stationary state for arbitrary (B, J Delta, alpha, beta); initial-state
// independent.
Mat steady_state_closed(const ClosedFormContext& ctx);

// Signed stationary-concurrence kernel; the concurrence is max(k_m, 0).
double k_m(const ClosedFormContext& ctx);

double final_concurrence(const ClosedFormContext& ctx);

// Global maximum of the stationary concurrence over (B, J Delta) at thermal
// occupation n (attained at B = 0):
//   max( (sqrt(5 + 16 n(1+n)) - (8n^2 + 8n + 1)) / (4 (1+2n)^2), 0 ).
// Positive exactly when n < (sqrt(2) - 1)/2.
double cmax_infinity(double n);

namespace detail {
// Decay kernels of the pure-state (r = 1) concurrence. theta = 2 J Delta t,
// tau = (alpha + beta) t. Exposed for the unit tests.
double g1(double alpha, double beta, double t, const ClosedFormContext& ctx);
double g2(double t, const ClosedFormContext& ctx);
double g3(double a, double b, double t, const ClosedFormContext& ctx);
double g4_abs(double t, const ClosedFormContext& ctx);  // |G4|; G4 is complex
double g5(double t, const ClosedFormContext& ctx);
}  // namespace detail

}  // namespace qdyn
