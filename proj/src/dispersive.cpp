#include "tqdsim/dispersive.hpp"

#include <cmath>

#include "tqdsim/units.hpp"

namespace tqdsim {

double DispersiveModel::gate_time() const {
  if (chi == 0.0) throw std::invalid_argument("gate_time: chi is zero");
  return kPi / (2.0 * std::abs(chi));
}

DispersiveModel schrieffer_wolff_reduce(const HybridSystem& sys) {
  sys.validate();
  DispersiveModel m;
  double min_ratio = 1e300;
  for (int k = 0; k < 2; ++k) {
    const double d = sys.delta(k);
    if (d == 0.0)
      throw ContractViolation("schrieffer_wolff_reduce: Delta = 0 is singular");
    m.lamb_shift[k] = sys.g[k] * sys.g[k] / d;
    m.omega_tilde[k] = -sys.omega[k] + m.lamb_shift[k];
    if (sys.g[k] > 0.0) min_ratio = std::min(min_ratio, std::abs(d) / sys.g[k]);
  }
  m.chi = sys.g[0] * sys.g[1] * (sys.delta(0) + sys.delta(1)) /
          (2.0 * sys.delta(0) * sys.delta(1));
  m.dispersive_warning = min_ratio < 5.0;

  const MatrixC sz = qubit_sigma_z();
  const MatrixC sm = qubit_sigma_minus();
  const MatrixC id2 = MatrixC::Identity(2, 2);
  MatrixC h = 0.5 * m.omega_tilde[0] * kron(sz, id2) + 0.5 * m.omega_tilde[1] * kron(id2, sz);
  const MatrixC exch = kron(sm.adjoint().eval(), sm);
  h -= m.chi * (exch + exch.adjoint());
  m.h_reduced = h;
  return m;
}

MatrixC sw_generator(const HybridSystem& sys) {
  MatrixC s = MatrixC::Zero(sys.dim(), sys.dim());
  const MatrixC ad = embed_osc(sys, osc_annihilation(sys.n_max).adjoint().eval());
  for (int k = 0; k < 2; ++k) {
    const double d = sys.delta(k);
    if (d == 0.0) throw ContractViolation("sw_generator: Delta = 0 is singular");
    const MatrixC term = (sys.g[k] / d) * ad * embed_qubit(sys, qubit_sigma_minus(), k);
    s += term - term.adjoint();
  }
  return s;
}

MatrixC exchange_hamiltonian(double chi) {
  const MatrixC sm = qubit_sigma_minus();
  const MatrixC exch = kron(sm.adjoint().eval(), sm);
  return (-chi * (exch + exch.adjoint())).eval();
}

MatrixC ideal_iswap(double chi, double t) {
  MatrixC u = MatrixC::Identity(4, 4);
  const double c = std::cos(chi * t), s = std::sin(chi * t);
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = cxd(0.0, s);
  u(2, 1) = cxd(0.0, s);
  return u;
}

}  // namespace tqdsim
