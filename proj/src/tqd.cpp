#include "tqdsim/tqd.hpp"

#include <cmath>

#include "tqdsim/units.hpp"

namespace tqdsim {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

double TqdParams::t_p() const { return (t12 + t23) / kSqrt2; }
double TqdParams::t_m() const { return (t12 - t23) / kSqrt2; }

TqdParams TqdParams::operating_point(double t_p, double eps_q_bar, double min_ratio) {
  if (t_p <= 0.0) throw std::invalid_argument("operating_point: t_p must be positive");
  if (eps_q_bar < min_ratio * t_p * (1.0 - 1e-12))  // slack for rounding at the boundary
    throw std::invalid_argument("operating_point: eps_q/t_p below the dispersive threshold");
  TqdParams p;
  p.eps_d_bar = 0.0;
  p.eps_q_bar = eps_q_bar;
  p.t12 = t_p / kSqrt2;  // t_m = 0
  p.t23 = t_p / kSqrt2;
  return p;
}

MatrixC tqd_position_hamiltonian(const TqdParams& p) {
  MatrixC h = MatrixC::Zero(3, 3);
  h(0, 0) = p.eps_d();
  h(1, 1) = p.eps_q();
  h(2, 2) = -p.eps_d();
  h(0, 1) = h(1, 0) = p.t12;
  h(1, 2) = h(2, 1) = p.t23;
  return h;
}

MatrixC even_odd_transform() {
  MatrixC v = MatrixC::Zero(3, 3);
  const double r = 1.0 / kSqrt2;
  v(0, 0) = r;   // |E> = (|100> + |001>)/sqrt2
  v(2, 0) = r;
  v(1, 1) = 1.0; // |C> = |010>
  v(0, 2) = r;   // |L> = (|100> - |001>)/sqrt2
  v(2, 2) = -r;
  return v;
}

MatrixC tqd_even_odd_hamiltonian(const TqdParams& p) {
  const MatrixC v = even_odd_transform();
  return (v.adjoint() * tqd_position_hamiltonian(p) * v).eval();
}

TqdEigensystem eigensystem_analytic(const TqdParams& p) {
  const double tp = p.t_p();
  const double tm = p.t_m();
  const double scale = std::max({std::abs(tp), std::abs(p.eps_q()), 1.0});
  if (std::abs(p.eps_d()) > 1e-12 * scale || std::abs(tm) > 1e-12 * scale)
    throw ContractViolation("eigensystem_analytic: needs eps_d = 0 and t_m = 0");
  const double eq = p.eps_q();
  const double s = std::sqrt(4.0 * tp * tp + eq * eq);
  TqdEigensystem es;
  es.e_g = 0.5 * (eq - s);
  es.e_e = 0.0;
  es.e_f = 0.5 * (eq + s);
  es.theta = 0.5 * std::atan2(2.0 * tp, eq);  // 0 when tp = eq = 0
  es.vectors = MatrixC::Zero(3, 3);
  const double c = std::cos(es.theta), sn = std::sin(es.theta);
  es.vectors(0, 0) = c;    // g in {E,C,L}
  es.vectors(1, 0) = -sn;
  es.vectors(2, 1) = 1.0;  // e = L
  es.vectors(0, 2) = sn;   // f
  es.vectors(1, 2) = c;
  fix_eigenvector_phases(es.vectors);  // same representative as the numeric path
  return es;
}

TqdEigensystem eigensystem_numeric(const TqdParams& p) {
  const Eigensystem raw = eig_hermitian(tqd_even_odd_hamiltonian(p));
  TqdEigensystem es;
  es.e_g = raw.values(0);
  es.e_e = raw.values(1);
  es.e_f = raw.values(2);
  es.vectors = raw.vectors;
  es.theta = std::atan2(std::abs(raw.vectors(1, 0)), std::abs(raw.vectors(0, 0)));
  return es;
}

ExcitationExpansion excitation_energy_expansion(const TqdParams& p) {
  const double tp = p.t_p();
  const double tm = p.t_m();
  const double eq = p.eps_q_bar;
  const double scale = std::max({std::abs(tp), std::abs(eq), 1.0});
  if (std::abs(p.eps_d_bar) > 1e-9 * scale)
    throw ContractViolation("excitation_energy_expansion: expansion point needs eps_d_bar = 0");
  const double teff2 = tp * tp + tm * tm;
  if (teff2 == 0.0)
    throw ContractViolation("excitation_energy_expansion: vanishing tunneling");
  const double s = std::sqrt(4.0 * teff2 + eq * eq);
  ExcitationExpansion ex;
  ex.omega_ge0 = 0.5 * (s - eq);
  ex.slope_d = -(tp * tm / teff2) * (3.0 + eq / s);
  ex.slope_q = 0.5 * (eq / s - 1.0);
  return ex;
}

SweetSpotDerivatives sweet_spot_derivatives(const TqdParams& p) {
  const double h = std::max(p.t_p() * 1e-5, angular(1e3));
  auto omega_ge = [&p](double dd, double dq) {
    TqdParams q = p;
    q.d_eps_d += dd;
    q.d_eps_q += dq;
    return eigensystem_numeric(q).omega_ge();
  };
  auto central = [&](double step, bool dipolar) {
    const double fp = dipolar ? omega_ge(step, 0.0) : omega_ge(0.0, step);
    const double fm = dipolar ? omega_ge(-step, 0.0) : omega_ge(0.0, -step);
    return (fp - fm) / (2.0 * step);
  };
  SweetSpotDerivatives out;
  out.step = h;
  const double dd_h = central(h, true), dd_h2 = central(h / 2.0, true);
  const double dq_h = central(h, false), dq_h2 = central(h / 2.0, false);
  // Richardson: central differences converge at O(h^2)
  out.slope_d = (4.0 * dd_h2 - dd_h) / 3.0;
  out.slope_q = (4.0 * dq_h2 - dq_h) / 3.0;
  out.err_d = std::abs(dd_h2 - dd_h) / 3.0;
  out.err_q = std::abs(dq_h2 - dq_h) / 3.0;
  return out;
}

MatrixC dipole_matrix_elements(const TqdEigensystem& es) {
  MatrixC d_eo = MatrixC::Zero(3, 3);
  d_eo(0, 2) = 1.0;  // |E><L| + |L><E| in even-odd coordinates
  d_eo(2, 0) = 1.0;
  return (es.vectors.adjoint() * d_eo * es.vectors).eval();
}

Eigen::Matrix3d eigenstate_populations(const TqdEigensystem& es) {
  Eigen::Matrix3d pops;
  for (int state = 0; state < 3; ++state)
    for (int basis = 0; basis < 3; ++basis)
      pops(state, basis) = std::norm(es.vectors(basis, state));
  return pops;
}

double drive_envelope(const DriveParams& d, double t) {
  if (t < 0.0 || t > d.duration) return 0.0;
  switch (d.shape) {
    case DriveShape::constant:
      return d.amplitude;
    case DriveShape::raised_cosine: {
      const double x = std::sin(kPi * t / d.duration);
      return d.amplitude * x * x;
    }
  }
  return 0.0;
}

bool drive_amplitude_warning(const DriveParams& d, double t_p) {
  return d.amplitude > 0.1 * t_p;
}

MatrixC effective_drive_hamiltonian(const TqdEigensystem& es, double eps_t, double phi,
                                    double d_eps_d, double d_eps_q, bool* rwa_warning) {
  const double c = std::cos(es.theta), s = std::sin(es.theta);
  MatrixC h = MatrixC::Zero(3, 3);
  h(0, 0) = d_eps_q * s * s;
  h(2, 2) = d_eps_q * c * c;
  const cxd off = c * (0.5 * eps_t * std::exp(cxd(0.0, phi)) + d_eps_d);
  h(0, 1) = off;
  h(1, 0) = std::conj(off);
  if (rwa_warning) {
    // dropped terms rotate at omega_ge + omega_0 ~ 2 omega_ge and at the g-f
    // detuning omega_ef - omega_ge; flag drives within 10x of either gap
    const double gap = std::min(2.0 * es.omega_ge(), std::abs(es.omega_ef() - es.omega_ge()));
    *rwa_warning = std::abs(eps_t) * 10.0 > gap;
  }
  return h;
}

}  // namespace tqdsim
