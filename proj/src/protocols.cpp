#include "tqdsim/protocols.hpp"

#include <cmath>

namespace tqdsim {

void DecoherenceRates::validate() const {
  for (int k = 0; k < 2; ++k) {
    if (gamma_ge[k] < 0.0 || gamma_ef[k] < 0.0 || gamma_gf[k] < 0.0 || gamma_phi[k] < 0.0)
      throw std::invalid_argument("DecoherenceRates: negative qubit rate");
  }
  if (gamma_a < 0.0 || gamma_phi_mode < 0.0)
    throw std::invalid_argument("DecoherenceRates: negative mode rate");
}

std::vector<LindbladChannel> build_channels(const DecoherenceRates& rates,
                                            const HybridSystem& sys) {
  rates.validate();
  for (int k = 0; k < 2; ++k)
    if (rates.gamma_ef[k] != 0.0 || rates.gamma_gf[k] != 0.0)
      throw ContractViolation(
          "build_channels: f-level relaxation rates require the third dot level, "
          "which is eliminated before this model");

  std::vector<LindbladChannel> ch;
  const MatrixC dephase_q = qubit_excited() - (MatrixC::Identity(2, 2) - qubit_excited());
  for (int k = 0; k < 2; ++k) {
    if (rates.gamma_ge[k] > 0.0)
      ch.push_back({embed_qubit(sys, qubit_sigma_minus(), k), rates.gamma_ge[k]});
    if (rates.gamma_phi[k] > 0.0)
      ch.push_back({embed_qubit(sys, dephase_q, k), 0.5 * rates.gamma_phi[k]});
  }
  if (rates.gamma_a > 0.0)
    ch.push_back({embed_osc(sys, osc_annihilation(sys.n_max, Ladder::bosonic)), rates.gamma_a});
  if (rates.gamma_phi_mode > 0.0) {
    MatrixC zmode = MatrixC::Zero(sys.levels(), sys.levels());
    zmode(0, 0) = 1.0;
    if (sys.n_max >= 1) zmode(1, 1) = -1.0;
    ch.push_back({embed_osc(sys, zmode), 0.5 * rates.gamma_phi_mode});
  }
  return ch;
}

MatrixC basis_state_density(const HybridSystem& sys, int q1, int q2, int n) {
  MatrixC rho = MatrixC::Zero(sys.dim(), sys.dim());
  rho(basis_index(sys, q1, q2, n), basis_index(sys, q1, q2, n)) = 1.0;
  return rho;
}

namespace {

std::vector<std::string> all_labels(const HybridSystem& sys) {
  std::vector<std::string> l;
  l.reserve(static_cast<std::size_t>(sys.dim()));
  for (int i = 0; i < sys.dim(); ++i) l.push_back(basis_label(sys, i));
  return l;
}

}  // namespace

ProtocolResult run_iswap_protocol(const HybridSystem& sys, const DecoherenceRates& rates,
                                  const MatrixC& rho0, const ProtocolOptions& opts) {
  sys.validate(false);
  const double dscale = std::max(std::abs(sys.delta(0)), std::abs(sys.delta(1)));
  if (std::abs(sys.delta(0) - sys.delta(1)) > 1e-9 * dscale)
    throw std::invalid_argument("iswap protocol: qubit detunings must match");
  const DispersiveModel m = schrieffer_wolff_reduce(sys);
  if (std::abs(m.omega_tilde[0] - m.omega_tilde[1]) >
      1e-9 * std::max(std::abs(m.omega_tilde[0]), std::abs(m.omega_tilde[1])))
    throw std::invalid_argument("iswap protocol: shifted splittings must match");

  ProtocolResult res;
  res.spec.kind = GateKind::iswap_dispersive;
  res.spec.duration = m.gate_time();
  res.spec.form = opts.form;
  res.spec.target = ideal_iswap(m.chi, res.spec.duration);
  res.labels = all_labels(sys);

  const MatrixC h = (opts.form == CouplingForm::rotating_wave)
                        ? dispersive_frame_hamiltonian(sys)
                        : tavis_cummings_hamiltonian(sys);  // lab frame, constant
  const auto channels = build_channels(rates, sys);
  const MatrixC target = basis_state_density(sys, 1, 0, 0);
  IntegratorOptions io;
  io.tol = opts.tol;
  res.traj = integrate(rho0, h, channels, uniform_grid(0.0, res.spec.duration, opts.samples),
                       io, &target);
  res.fidelity = res.traj.fidelity.back();
  return res;
}

ProtocolResult run_holonomic_protocol(const HybridSystem& sys, const DecoherenceRates& rates,
                                      const MatrixC& rho0, const ProtocolOptions& opts) {
  sys.validate(true);
  for (int k = 0; k < 2; ++k)
    if (std::abs(sys.delta(k)) > 1e-9 * std::abs(sys.omega_r))
      throw std::invalid_argument("holonomic protocol: qubits must be on resonance with the mode");

  const BrightDarkFrame f = bright_dark(sys);

  ProtocolResult res;
  res.spec.kind = GateKind::holonomic_resonant;
  res.spec.duration = kPi / f.omega;
  res.spec.form = opts.form;
  res.spec.phi_mix = f.phi_mix;
  res.spec.target = ideal_holonomic(f.phi_mix);
  res.labels = all_labels(sys);

  const MatrixC h = (opts.form == CouplingForm::rotating_wave)
                        ? resonant_frame_hamiltonian(sys, opts.ladder)
                        : transmon_hamiltonian(sys, opts.ladder);
  const auto channels = build_channels(rates, sys);
  const MatrixC target = basis_state_density(sys, 1, 0, 1);
  IntegratorOptions io;
  io.tol = opts.tol;
  res.traj = integrate(rho0, h, channels, uniform_grid(0.0, res.spec.duration, opts.samples),
                       io, &target);
  res.fidelity = res.traj.fidelity.back();
  return res;
}

double average_gate_fidelity(const HybridSystem& sys, const DecoherenceRates& rates,
                             GateKind kind, const ProtocolOptions& opts) {
  double t_gate = 0.0;
  MatrixC u4;
  MatrixC h;
  if (kind == GateKind::iswap_dispersive) {
    sys.validate(false);
    const DispersiveModel m = schrieffer_wolff_reduce(sys);
    t_gate = m.gate_time();
    // second-order prediction of the rotating-frame propagator on the
    // zero-photon subspace: dressed diagonal phases plus the photon-mediated
    // exchange
    MatrixC h4 = MatrixC::Zero(4, 4);
    const double s1 = sys.delta(0) + m.lamb_shift[0];
    const double s2 = sys.delta(1) + m.lamb_shift[1];
    h4(1, 1) = s1;
    h4(2, 2) = s2;
    h4(3, 3) = s1 + s2;
    h4(1, 2) = h4(2, 1) = m.chi;
    u4 = expm_unitary(h4, t_gate);
    h = (opts.form == CouplingForm::rotating_wave) ? dispersive_frame_hamiltonian(sys)
                                                   : tavis_cummings_hamiltonian(sys);
  } else {
    sys.validate(true);
    const BrightDarkFrame f = bright_dark(sys);
    t_gate = kPi / f.omega;
    u4 = ideal_holonomic(f.phi_mix);
    h = (opts.form == CouplingForm::rotating_wave) ? resonant_frame_hamiltonian(sys, opts.ladder)
                                                   : transmon_hamiltonian(sys, opts.ladder);
  }

  const auto channels = build_channels(rates, sys);
  const auto idx = computational_indices(sys);
  const int dim = sys.dim();

  std::vector<VectorC> initial;
  for (int i = 0; i < 4; ++i) {
    VectorC v = VectorC::Zero(4);
    v(i) = 1.0;
    initial.push_back(v);
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      VectorC v = VectorC::Zero(4);
      v(i) = r;
      v(j) = r;
      initial.push_back(v);
      v(j) = cxd(0.0, r);
      initial.push_back(v);
    }

  IntegratorOptions io;
  io.tol = opts.tol;
  const std::vector<double> grid = {0.0, t_gate};
  double acc = 0.0;
  for (const VectorC& v4 : initial) {
    VectorC psi0 = VectorC::Zero(dim);
    for (int i = 0; i < 4; ++i) psi0(idx[i]) = v4(i);
    const MatrixC rho0 = psi0 * psi0.adjoint();
    const VectorC ideal4 = u4 * v4;
    VectorC ideal = VectorC::Zero(dim);
    for (int i = 0; i < 4; ++i) ideal(idx[i]) = ideal4(i);
    const MatrixC rho_id = ideal * ideal.adjoint();
    const Trajectory traj = integrate(rho0, h, channels, grid, io, &rho_id);
    acc += traj.fidelity.back();
  }
  return acc / static_cast<double>(initial.size());
}

}  // namespace tqdsim
