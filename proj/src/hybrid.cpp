#include "tqdsim/hybrid.hpp"

#include <cmath>

namespace tqdsim {

void HybridSystem::validate(bool needs_anharmonic) const {
  if (omega_r <= 0.0) throw std::invalid_argument("HybridSystem: omega_r must be positive");
  if (n_max < 2) throw std::invalid_argument("HybridSystem: n_max must be at least 2");
  if (needs_anharmonic && n_max < 3)
    throw std::invalid_argument("HybridSystem: anharmonic runs need n_max >= 3");
  if (alpha < 0.0) throw std::invalid_argument("HybridSystem: alpha must be >= 0");
  for (int k = 0; k < 2; ++k)
    if (g[k] < 0.0) throw std::invalid_argument("HybridSystem: couplings must be >= 0");
}

int basis_index(const HybridSystem& sys, int q1, int q2, int n) {
  return (q1 * 2 + q2) * sys.levels() + n;
}

std::string basis_label(const HybridSystem& sys, int idx) {
  const int n = idx % sys.levels();
  const int q = idx / sys.levels();
  std::string s;
  s += (q / 2) ? 'e' : 'g';
  s += (q % 2) ? 'e' : 'g';
  s += std::to_string(n);
  return s;
}

MatrixC qubit_sigma_z() {
  MatrixC s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

MatrixC qubit_sigma_minus() {
  MatrixC s(2, 2);
  s << 0, 1, 0, 0;
  return s;
}

MatrixC qubit_sigma_x() {
  MatrixC s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

MatrixC qubit_excited() {
  MatrixC s = MatrixC::Zero(2, 2);
  s(1, 1) = 1.0;
  return s;
}

MatrixC osc_annihilation(int n_max, Ladder ladder) {
  MatrixC a = MatrixC::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n < n_max; ++n)
    a(n, n + 1) = (ladder == Ladder::bosonic) ? std::sqrt(n + 1.0) : 1.0;
  return a;
}

MatrixC embed_qubit(const HybridSystem& sys, const MatrixC& op, int k) {
  const MatrixC id2 = MatrixC::Identity(2, 2);
  const MatrixC ido = MatrixC::Identity(sys.levels(), sys.levels());
  return (k == 0) ? tensor({op, id2, ido}) : tensor({id2, op, ido});
}

MatrixC embed_osc(const HybridSystem& sys, const MatrixC& op) {
  const MatrixC id2 = MatrixC::Identity(2, 2);
  return tensor({id2, id2, op});
}

namespace {

MatrixC coupling_full(const HybridSystem& sys, Ladder ladder) {
  const MatrixC a = osc_annihilation(sys.n_max, ladder);
  const MatrixC x = embed_osc(sys, (a + a.adjoint()).eval());
  MatrixC h = MatrixC::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < 2; ++k)
    h += sys.g[k] * embed_qubit(sys, qubit_sigma_x(), k) * x;
  return h;
}

MatrixC coupling_rwa(const HybridSystem& sys, Ladder ladder) {
  const MatrixC ad = embed_osc(sys, osc_annihilation(sys.n_max, ladder).adjoint().eval());
  MatrixC h = MatrixC::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < 2; ++k) {
    const MatrixC term = sys.g[k] * ad * embed_qubit(sys, qubit_sigma_minus(), k);
    h += term + term.adjoint();
  }
  return h;
}

MatrixC qubit_splittings(const HybridSystem& sys) {
  MatrixC h = MatrixC::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < 2; ++k)
    h -= 0.5 * sys.omega[k] * embed_qubit(sys, qubit_sigma_z(), k);
  return h;
}

}  // namespace

MatrixC tavis_cummings_hamiltonian(const HybridSystem& sys) {
  sys.validate();
  const MatrixC a = osc_annihilation(sys.n_max);
  MatrixC h = sys.omega_r * embed_osc(sys, (a.adjoint() * a).eval());
  h += qubit_splittings(sys);
  h += coupling_full(sys, Ladder::bosonic);
  require_hermitian(h, "tavis_cummings_hamiltonian");
  return h;
}

MatrixC rwa_hamiltonian(const HybridSystem& sys) {
  sys.validate();
  const MatrixC a = osc_annihilation(sys.n_max);
  MatrixC h = sys.omega_r * embed_osc(sys, (a.adjoint() * a).eval());
  h += qubit_splittings(sys);
  h += coupling_rwa(sys, Ladder::bosonic);
  require_hermitian(h, "rwa_hamiltonian");
  return h;
}

MatrixC transmon_hamiltonian(const HybridSystem& sys, Ladder ladder) {
  sys.validate(sys.alpha > 0.0);
  MatrixC number = MatrixC::Zero(sys.levels(), sys.levels());
  for (int n = 0; n <= sys.n_max; ++n)
    number(n, n) = sys.omega_r * n - 0.5 * n * (n - 1.0) * sys.alpha;
  MatrixC h = embed_osc(sys, number);
  h += qubit_splittings(sys);
  h += coupling_full(sys, ladder);
  require_hermitian(h, "transmon_hamiltonian");
  return h;
}

MatrixC rwa_interaction(const HybridSystem& sys) {
  sys.validate();
  // keep only the 0 <-> 1 rung of the ladder
  MatrixC a01 = MatrixC::Zero(sys.levels(), sys.levels());
  a01(0, 1) = 1.0;
  const MatrixC ad = embed_osc(sys, a01.adjoint().eval());
  MatrixC h = MatrixC::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < 2; ++k) {
    const MatrixC term = sys.g[k] * ad * embed_qubit(sys, qubit_sigma_minus(), k);
    h += term + term.adjoint();
  }
  require_hermitian(h, "rwa_interaction");
  return h;
}

MatrixC excitation_number(const HybridSystem& sys) {
  const MatrixC a = osc_annihilation(sys.n_max);
  MatrixC n = embed_osc(sys, (a.adjoint() * a).eval());
  for (int k = 0; k < 2; ++k) n += embed_qubit(sys, qubit_excited(), k);
  return n;
}

MatrixC dispersive_frame_hamiltonian(const HybridSystem& sys) {
  sys.validate();
  MatrixC h = MatrixC::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < 2; ++k)
    h += sys.delta(k) * embed_qubit(sys, qubit_excited(), k);
  h += coupling_rwa(sys, Ladder::bosonic);
  require_hermitian(h, "dispersive_frame_hamiltonian");
  return h;
}

MatrixC uniform_frame_hamiltonian(const HybridSystem& sys, Ladder ladder) {
  sys.validate(sys.alpha > 0.0);
  MatrixC anh = MatrixC::Zero(sys.levels(), sys.levels());
  for (int n = 0; n <= sys.n_max; ++n) anh(n, n) = -0.5 * n * (n - 1.0) * sys.alpha;
  MatrixC h = embed_osc(sys, anh);
  for (int k = 0; k < 2; ++k)
    h += sys.delta(k) * embed_qubit(sys, qubit_excited(), k);
  h += coupling_rwa(sys, ladder);
  require_hermitian(h, "uniform_frame_hamiltonian");
  return h;
}

MatrixC resonant_frame_hamiltonian(const HybridSystem& sys, Ladder ladder) {
  sys.validate(sys.alpha > 0.0);
  for (int k = 0; k < 2; ++k)
    if (std::abs(sys.delta(k)) > 1e-9 * sys.omega_r)
      throw ContractViolation("resonant_frame_hamiltonian: qubits must sit on resonance");
  MatrixC anh = MatrixC::Zero(sys.levels(), sys.levels());
  for (int n = 0; n <= sys.n_max; ++n) anh(n, n) = -0.5 * n * (n - 1.0) * sys.alpha;
  MatrixC h = embed_osc(sys, anh);
  h += coupling_rwa(sys, ladder);
  require_hermitian(h, "resonant_frame_hamiltonian");
  return h;
}

}  // namespace tqdsim
