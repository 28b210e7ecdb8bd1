// Two charge qubits dipole-coupled to one bosonic mode (the resonator, or the
// transmon ladder in the resonant scheme). Tensor order is qubit1 x qubit2 x
// oscillator with qubit index 0 = |g>, so the flat basis index is
//   (q1 * 2 + q2) * (n_max + 1) + n.
#pragma once

#include <string>

#include "tqdsim/linalg.hpp"

namespace tqdsim {

// coupling matrix elements up the oscillator ladder: bosonic sqrt(n+1), or
// uniform (all 1) for a qubit-like transmon ladder
enum class Ladder { bosonic, uniform };

struct HybridSystem {
  double omega[2] = {0.0, 0.0};  // qubit splittings, rad/s
  double g[2] = {0.0, 0.0};      // couplings, rad/s
  double omega_r = 0.0;          // mode frequency, rad/s
  int n_max = 2;                 // oscillator levels 0..n_max
  double alpha = 0.0;            // anharmonicity (transmon mode only), rad/s

  double delta(int k) const { return omega[k] - omega_r; }
  int levels() const { return n_max + 1; }
  int dim() const { return 4 * (n_max + 1); }
  void validate(bool needs_anharmonic = false) const;
};

int basis_index(const HybridSystem& sys, int q1, int q2, int n);
std::string basis_label(const HybridSystem& sys, int idx);  // e.g. "ge1"

// 2x2 qubit operators, index 0 = |g>
MatrixC qubit_sigma_z();      // |g><g| - |e><e|
MatrixC qubit_sigma_minus();  // |g><e|
MatrixC qubit_sigma_x();
MatrixC qubit_excited();      // |e><e|

// oscillator lowering operator on levels 0..n_max
MatrixC osc_annihilation(int n_max, Ladder ladder = Ladder::bosonic);

// embeddings into the full space
MatrixC embed_qubit(const HybridSystem& sys, const MatrixC& op, int k);
MatrixC embed_osc(const HybridSystem& sys, const MatrixC& op);

// full dipole-coupled Hamiltonian,
//   H = w_r a†a - sum_k [ (w_k/2) sigma_z^k - g_k sigma_x^k (a + a†) ],
// counter-rotating terms included
MatrixC tavis_cummings_hamiltonian(const HybridSystem& sys);

// number-conserving form: coupling projected to a† sigma_- + a sigma_+
MatrixC rwa_hamiltonian(const HybridSystem& sys);

// anharmonic-mode variant: w_r a†a - sum_n [n(n-1)/2] alpha |n><n| + qubit and
// sigma_x (a + a†) coupling terms; ladder picks the coupling matrix elements
MatrixC transmon_hamiltonian(const HybridSystem& sys, Ladder ladder = Ladder::bosonic);

// resonant interaction sum_k g_k (a† sigma_-^k + h.c.) restricted to oscillator
// levels {0, 1}; block diagonal in the total excitation number
MatrixC rwa_interaction(const HybridSystem& sys);

// N = a†a + sum_k |e><e|_k
MatrixC excitation_number(const HybridSystem& sys);

// Generators in the frame rotating uniformly at the mode frequency (exp(i w_r N t)).
// Diagonal channels and basis-state populations are invariant under this frame,
// and the number-conserving Hamiltonians become time independent:
//   dispersive: sum_k Delta_k |e><e|_k + sum_k g_k (a† sigma_- + a sigma_+)
MatrixC dispersive_frame_hamiltonian(const HybridSystem& sys);
//   resonant transmon (omega_k = omega_r): -sum_n [n(n-1)/2] alpha |n><n| + couplings
MatrixC resonant_frame_hamiltonian(const HybridSystem& sys, Ladder ladder = Ladder::uniform);
//   general case (detuned qubits, any anharmonicity): union of the two above,
//   used for quasi-static detuning-noise draws around either protocol
MatrixC uniform_frame_hamiltonian(const HybridSystem& sys, Ladder ladder = Ladder::bosonic);

}  // namespace tqdsim
