#include "tqdsim/holonomic.hpp"

#include <cmath>

namespace tqdsim {

double mixing_angle(double g1, double g2) {
  if (g1 == 0.0 && g2 == 0.0)
    throw std::invalid_argument("mixing_angle: both couplings zero");
  // double-angle form keeps the branch stable for any sign combination and
  // lands on -pi/2 for equal couplings
  const double phi = std::atan2(-2.0 * g1 * g2, g2 * g2 - g1 * g1);
  // a signed zero in the numerator can land on the -pi branch; keep (-pi, pi]
  return phi <= -kPi ? kPi : phi;
}

BrightDarkFrame bright_dark(const HybridSystem& sys) {
  const double g1 = sys.g[0], g2 = sys.g[1];
  BrightDarkFrame f;
  f.phi_mix = mixing_angle(g1, g2);
  f.omega = std::sqrt(g1 * g1 + g2 * g2);
  const double sh = std::sin(0.5 * f.phi_mix);
  const double ch = std::cos(0.5 * f.phi_mix);

  const int dim = sys.dim();
  const int eg0 = basis_index(sys, 1, 0, 0);
  const int ge0 = basis_index(sys, 0, 1, 0);
  const int eg1 = basis_index(sys, 1, 0, 1);
  const int ge1 = basis_index(sys, 0, 1, 1);

  // single-excitation sector: bright pairs with |g,g,1>, dark decouples
  f.bright1 = VectorC::Zero(dim);
  f.bright1(eg0) = sh;
  f.bright1(ge0) = -ch;
  f.dark1 = VectorC::Zero(dim);
  f.dark1(eg0) = ch;
  f.dark1(ge0) = sh;

  // double-excitation sector mirrors with the roles of the qubits swapped:
  // |e,e,0> couples to g1|g,e,1> + g2|e,g,1>
  f.bright2 = VectorC::Zero(dim);
  f.bright2(ge1) = sh;
  f.bright2(eg1) = -ch;
  f.dark2 = VectorC::Zero(dim);
  f.dark2(ge1) = ch;
  f.dark2(eg1) = sh;
  return f;
}

MatrixC ideal_holonomic(double phi) {
  MatrixC u = MatrixC::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = std::cos(phi);
  u(1, 2) = std::sin(phi);
  u(2, 1) = std::sin(phi);
  u(2, 2) = -std::cos(phi);
  u(3, 3) = -1.0;
  return u;
}

std::array<int, 4> computational_indices(const HybridSystem& sys) {
  return {basis_index(sys, 0, 0, 0), basis_index(sys, 1, 0, 0),
          basis_index(sys, 0, 1, 0), basis_index(sys, 1, 1, 0)};
}

MatrixC computational_block(const HybridSystem& sys, const MatrixC& u) {
  const auto idx = computational_indices(sys);
  MatrixC b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b(i, j) = u(idx[i], idx[j]);
  return b;
}

HolonomyReport holonomy_conditions_check(const HybridSystem& sys, bool exact, Ladder ladder) {
  sys.validate(!exact);
  const BrightDarkFrame f = bright_dark(sys);
  const double t_gate = kPi / f.omega;
  const MatrixC h_meas = rwa_interaction(sys);
  const MatrixC h_run = exact ? h_meas : resonant_frame_hamiltonian(sys, ladder);
  const Eigensystem es = eig_hermitian(h_run);

  const auto idx = computational_indices(sys);
  const MatrixC ideal = ideal_holonomic(f.phi_mix);

  HolonomyReport rep;
  const int n_t = 101;
  for (int k = 0; k <= n_t; ++k) {
    const double t = t_gate * static_cast<double>(k) / n_t;
    VectorC phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      phases(i) = std::exp(cxd(0.0, -es.values(i) * t));
    const MatrixC u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();

    // transported single-excitation logical states
    const VectorC psi1 = u.col(idx[1]);
    const VectorC psi2 = u.col(idx[2]);
    const double pt = std::max({std::abs(psi1.dot(h_meas * psi1)),
                                std::abs(psi1.dot(h_meas * psi2)),
                                std::abs(psi2.dot(h_meas * psi2))}) /
                      f.omega;
    rep.max_parallel_transport = std::max(rep.max_parallel_transport, pt);

    const double pd = std::norm(f.dark1.dot(u * f.dark1));
    rep.dark_drift = std::max(rep.dark_drift, std::abs(pd - 1.0));

    if (k == n_t) {
      const MatrixC block = computational_block(sys, u);
      rep.unitary_error = max_abs(MatrixC(block - ideal));
      for (int j = 0; j < 4; ++j) {
        double inside = 0.0;
        for (int i = 0; i < 4; ++i) inside += std::norm(u(idx[i], idx[j]));
        rep.leakage = std::max(rep.leakage, 1.0 - inside);
      }
    }
  }
  return rep;
}

}  // namespace tqdsim
