// Dispersive reduction: for |Delta_k| >> g_k a Schrieffer-Wolff transformation
// with generator S = sum_k (g_k/Delta_k)(a† sigma_-^k - sigma_+^k a) removes the
// first-order qubit-mode coupling and leaves an exchange interaction of rate
//   chi = g1 g2 (Delta1 + Delta2) / (2 Delta1 Delta2)
// between the qubits plus Lamb/Stark shifted splittings.
#pragma once

#include "tqdsim/hybrid.hpp"

namespace tqdsim {

struct DispersiveModel {
  double chi = 0.0;                    // exchange rate, rad/s
  double omega_tilde[2] = {0.0, 0.0};  // shifted splittings, -w_k + g_k^2/Delta_k
  double lamb_shift[2] = {0.0, 0.0};   // g_k^2/Delta_k
  MatrixC h_reduced;                   // zero-photon 4x4: sum (w~_k/2) sigma_z^k - chi exchange
  bool dispersive_warning = false;     // min |Delta/g| < 5
  double gate_time() const;            // pi/(2 chi)
};

DispersiveModel schrieffer_wolff_reduce(const HybridSystem& sys);

// the SW generator, for quantifying the reduction against the commutator
MatrixC sw_generator(const HybridSystem& sys);

// exchange-only rotating-frame Hamiltonian on the 4-dim qubit space,
// -chi (sigma_+^1 sigma_-^2 + sigma_-^1 sigma_+^2)
MatrixC exchange_hamiltonian(double chi);

// evolution of the exchange Hamiltonian on {gg, eg, ge, ee}:
//   diag-bordered block [[cos chi t, i sin chi t], [i sin chi t, cos chi t]]
// (an iSWAP when chi t = pi/2)
MatrixC ideal_iswap(double chi, double t);

}  // namespace tqdsim
