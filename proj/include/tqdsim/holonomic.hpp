// Resonant holonomic entangler. With both qubits on resonance with the mode,
// the single-excitation sector is a Lambda system: |g,g,1> couples only to the
// bright combination of {|e,g,0>, |g,e,0>} at rate Omega = sqrt(g1^2 + g2^2),
// while the dark combination is frozen. A pi pulse of the bright transition
// (T = pi/Omega) flips the bright state's sign and realizes, on the zero-photon
// computational subspace, the reflection U_ent(phi) with tan(phi/2) = -g1/g2.
#pragma once

#include <array>

#include "tqdsim/hybrid.hpp"

namespace tqdsim {

// phi in (-pi, pi]; the double-angle form of tan(phi/2) = -g1/g2, so equal
// couplings give phi = -pi/2 (|phi| = pi/2, the iSWAP-type entangler)
double mixing_angle(double g1, double g2);

struct BrightDarkFrame {
  VectorC bright1, dark1;  // single-excitation pair, full-space vectors
  VectorC bright2, dark2;  // two-excitation mirror (couples to |e,e,0>)
  double omega = 0.0;      // Rabi rate of the bright transition, rad/s
  double phi_mix = 0.0;
};

BrightDarkFrame bright_dark(const HybridSystem& sys);

// reflection on {gg0, eg0, ge0, ee0} (single-excitation rows ordered
// |e,g,0>, |g,e,0>):
//   [[1,0,0,0], [0,cos,sin,0], [0,sin,-cos,0], [0,0,0,-1]];
// unitary, Hermitian, squares to the identity
MatrixC ideal_holonomic(double phi);

// indices of {gg0, eg0, ge0, ee0} in the full space
std::array<int, 4> computational_indices(const HybridSystem& sys);

// project a full-space propagator onto the computational subspace
MatrixC computational_block(const HybridSystem& sys, const MatrixC& u);

struct HolonomyReport {
  double max_parallel_transport = 0.0;  // max |<psi_i|H|psi_j>| / Omega over the cycle
  double leakage = 0.0;                 // population outside the computational space at T
  double unitary_error = 0.0;           // entrywise diff vs ideal_holonomic(phi_mix)
  double dark_drift = 0.0;              // max change of the dark-state population
};

// closed-system diagnostics of the cyclic evolution; uses the restricted
// number-conserving interaction when exact = true, the full anharmonic model
// otherwise
HolonomyReport holonomy_conditions_check(const HybridSystem& sys, bool exact = true,
                                         Ladder ladder = Ladder::uniform);

}  // namespace tqdsim
