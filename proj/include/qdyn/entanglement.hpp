#pragma once

// Entanglement and coherence measures for two-qubit states, plus detection of
// entanglement sudden death / revival events in a concurrence time series.

#include <optional>
#include <vector>

#include "qdyn/linalg.hpp"

namespace qdyn {

// Wootters concurrence of an arbitrary 4x4 density matrix:
// C = max(0, l1 - l2 - l3 - l4), with l_i the decreasing square roots of the
// eigenvalues of rho (sy kron sy) rho^* (sy kron sy). Computed as the singular
// values of sqrt(rho^*) Y sqrt(rho), which evaluates the same l_i without the
// sqrt-of-near-zero noise of the direct eigenvalue route. Input must be
// Hermitian with eigenvalues >= -1e-10 (small negatives are clamped to zero);
// anything worse throws std::invalid_argument.
double concurrence(const Mat& rho);

// Fast path for X-structured states (only the diagonal and the two
// anti-diagonal coherences rho14, rho23 populated; every other entry must be
// below 1e-9 or std::invalid_argument is thrown):
// C = 2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)).
double concurrence_x(const Mat& rho);

// l1-norm coherence: sum of |rho_ij| over i != j (any dimension).
double l1_coherence(const Mat& rho);

// One sudden-death event: the time entanglement vanished and, if it returned,
// the time of the revival.
struct EsdEvent {
  double death_time = 0.0;
  std::optional<double> revival_time;
};

// Scan a sampled concurrence series for transitions across tol (default
// 1e-9). Crossing times are located by linear interpolation between samples.
// A series that starts at zero contributes no death at t = 0; deaths are only
// recorded after the series has been above tol.
std::vector<EsdEvent> esd_events(const std::vector<double>& times,
                                 const std::vector<double>& series,
                                 double tol = 1e-9);

}  // namespace qdyn
