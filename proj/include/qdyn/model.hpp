#pragma once

// The dissipative two-qubit XYZ Heisenberg model and its initial states.
//
// Units: hbar = 1 and all rates are measured against the bath coupling gamma
// (gamma = 1 in every reference computation). Two-qubit basis order is
// |00>, |01>, |10>, |11> with qubit 1 the left tensor factor.
//
// Single-qubit convention: sigma_minus = |1><0| (the dissipative decay drives
// each qubit toward |1>), sigma_plus = |0><1|, sigma_z = diag(1, -1). This is
// fixed by the zero-temperature steady state, which puts all population in
// |11>.

#include <string>
#include <vector>

#include "qdyn/kbes.hpp"

namespace qdyn {

// Pauli and ladder operators in the convention above.
const Mat& sigma_x();
const Mat& sigma_y();
const Mat& sigma_z();
const Mat& sigma_plus();
const Mat& sigma_minus();
const Mat& id2();

struct SpinChainParams {
  double B = 0.0;      // uniform field on sigma_z of both qubits
  double J = 1.0;      // XY exchange
  double Delta = 0.0;  // anisotropy; J*Delta is what enters the physics
  double Jz = 0.0;     // Ising coupling
  double gamma = 1.0;  // bath coupling, must be > 0
  double n = 0.0;      // mean thermal occupation of the baths, must be >= 0
};

// Throws std::invalid_argument on hard violations (gamma <= 0, n < 0,
// non-finite entries).
void check_params(const SpinChainParams& p);

// Soft advisories (currently: |Delta| >= 1 is outside the anisotropy range the
// closed-form benchmarks were derived for). The library never prints; the CLI
// forwards these to stderr.
std::vector<std::string> param_warnings(const SpinChainParams& p);

// H = B (sz1 + sz2) + J (sp1 sm2 + sm1 sp2) + J Delta (sp1 sp2 + sm1 sm2)
//     + Jz sz1 sz2, exactly Hermitian as stored.
Mat xyz_hamiltonian(const SpinChainParams& p);

// Independent thermal baths on each qubit: channels (sigma_i^-, 2 alpha) and
// (sigma_i^+, 2 beta) with alpha = gamma(n+1), beta = gamma n. Zero-weight
// channels are omitted, so n = 0 gives exactly the two decay channels.
std::vector<DissipationChannel> thermal_dissipators(const SpinChainParams& p);

// build_liouvillian(xyz_hamiltonian(p), thermal_dissipators(p)).
Liouvillian model_liouvillian(const SpinChainParams& p);

enum class EwlKind { Phi, Psi };

// Bell-like state mixed with white noise:
//   rho = r |psi><psi| + (1-r)/4 I,
// where |psi> = a|01> + b|10| (Phi) or a|00> + b|11> (Psi),
// a real in [0,1], b = b_abs * exp(i delta), a^2 + b_abs^2 = 1.
struct EWLParams {
  EwlKind kind = EwlKind::Phi;
  double r = 1.0;
  double a = 0.0;
  double b_abs = 1.0;
  double delta = 0.0;
};

// Convenience: fill b_abs = sqrt(1 - a^2).
EWLParams make_ewl(EwlKind kind, double r, double a, double delta = 0.0);

// Validates (r in [0,1], a and b_abs in [0,1], a^2 + b_abs^2 = 1 to 1e-12)
// and returns the density matrix. Always an X-structured matrix.
Mat ewl_density(const EWLParams& q);

}  // namespace qdyn
