// Triple-dot charge qubit: one electron in three tunnel-coupled dots, described
// in the position basis {|100>,|010>,|001>} by the two detunings
//   eps_d = (U1 - U3)/2   (dipolar)
//   eps_q = U2 - (U1 + U3)/2  (quadrupolar)
// and the tunnelings t12, t23. The even-odd basis {|E>,|C>,|L>} splits the
// outer-dot states into symmetric/antisymmetric combinations; there the
// Hamiltonian depends on t_p = (t12 + t23)/sqrt2 and t_m = (t12 - t23)/sqrt2,
// and the operating region eps_d = t_m = 0, eps_q >> t_p hosts simultaneous
// sweet spots against dipolar and quadrupolar noise.
#pragma once

#include "tqdsim/linalg.hpp"

namespace tqdsim {

struct TqdParams {
  // mean operating point, rad/s
  double eps_d_bar = 0.0;
  double eps_q_bar = 0.0;
  double t12 = 0.0;
  double t23 = 0.0;
  // quasi-static fluctuations, rad/s
  double d_eps_d = 0.0;
  double d_eps_q = 0.0;

  double t_p() const;
  double t_m() const;
  double eps_d() const { return eps_d_bar + d_eps_d; }
  double eps_q() const { return eps_q_bar + d_eps_q; }

  // symmetric operating point: eps_d = 0, t12 = t23; rejects eps_q/t_p below
  // min_ratio because the dispersive qubit definition needs eps_q >> t_p
  static TqdParams operating_point(double t_p, double eps_q_bar, double min_ratio = 10.0);
};

// position-basis Hamiltonian [[eps_d, t12, 0], [t12, eps_q, t23], [0, t23, -eps_d]]
MatrixC tqd_position_hamiltonian(const TqdParams& p);

// columns are |E>, |C>, |L> expressed in the position basis
MatrixC even_odd_transform();

// V† H_pos V; comes out [[0, t_p, eps_d], [t_p, eps_q, t_m], [eps_d, t_m, 0]]
MatrixC tqd_even_odd_hamiltonian(const TqdParams& p);

struct TqdEigensystem {
  double e_g = 0.0, e_e = 0.0, e_f = 0.0;  // ascending, rad/s
  double theta = 0.0;                      // E/C mixing angle of the ground state
  MatrixC vectors;                         // columns g,e,f in even-odd coordinates
  double omega_ge() const { return e_e - e_g; }
  double omega_gf() const { return e_f - e_g; }
  double omega_ef() const { return e_f - e_e; }
};

// closed forms, valid on the decoupled manifold eps_d = 0, t_m = 0:
//   E_g = (eps_q - s)/2, E_e = 0, E_f = (eps_q + s)/2, s = sqrt(4 t_p^2 + eps_q^2)
//   |g> = cos(th)|E> - sin(th)|C>, |e> = |L>, |f> = sin(th)|E> + cos(th)|C>
// with tan(2 th) = 2 t_p / eps_q (th = 0 when both vanish)
TqdEigensystem eigensystem_analytic(const TqdParams& p);

TqdEigensystem eigensystem_numeric(const TqdParams& p);

// first-order excitation-energy response around the mean point (eps_d_bar = 0):
//   omega_ge(d_eps) = omega_ge0 + slope_d * d_eps_d + slope_q * d_eps_q + ...
struct ExcitationExpansion {
  double omega_ge0 = 0.0;
  double slope_d = 0.0;  // vanishes iff t_m = 0 (dipolar sweet spot)
  double slope_q = 0.0;  // -> 0 as eps_q/t_p grows (quadrupolar sweet spot)
};
ExcitationExpansion excitation_energy_expansion(const TqdParams& p);

// central finite differences of the numeric omega_ge, Richardson refined;
// step h = max(t_p * 1e-5, 2*pi*1 kHz)
struct SweetSpotDerivatives {
  double slope_d = 0.0;
  double slope_q = 0.0;
  double err_d = 0.0;  // Richardson error estimates
  double err_q = 0.0;
  double step = 0.0;
};
SweetSpotDerivatives sweet_spot_derivatives(const TqdParams& p);

// dipole operator e*w*(|E><L| + |L><E|) in the eigenbasis, units of e*w;
// on the operating manifold: d_ge = cos(th), d_ef = sin(th), d_gf = 0,
// diagonal elements vanish (no static dipole at the symmetric point)
MatrixC dipole_matrix_elements(const TqdEigensystem& es);

// |<basis|state>|^2, rows g,e,f, columns E,C,L; rows sum to 1
Eigen::Matrix3d eigenstate_populations(const TqdEigensystem& es);

enum class DriveShape { constant, raised_cosine };

struct DriveParams {
  DriveShape shape = DriveShape::constant;
  double amplitude = 0.0;  // rad/s, peak of eps(t)
  double duration = 0.0;   // s
  double carrier = 0.0;    // rad/s, resonant with omega_ge for the reduced model
  double phase = 0.0;      // rad
};

// envelope value at t (amplitude units)
double drive_envelope(const DriveParams& d, double t);

// a drive this strong starts to defeat the perturbative reduction
bool drive_amplitude_warning(const DriveParams& d, double t_p);

// rotating-frame Hamiltonian in the {g,e,f} eigenbasis for a resonant dipolar
// drive eps(t) cos(w0 t + phi) plus quasi-static detuning noise:
//   [[d_eps_q sin^2 th, cos th (eps_t/2 e^{i phi} + d_eps_d), 0],
//    [h.c.,            0,                                    0],
//    [0,               0,                    d_eps_q cos^2 th]]
// rwa_warning is set when eps_t is within a factor 10 of a detuning gap
MatrixC effective_drive_hamiltonian(const TqdEigensystem& es, double eps_t, double phi,
                                    double d_eps_d, double d_eps_q,
                                    bool* rwa_warning = nullptr);

}  // namespace tqdsim
