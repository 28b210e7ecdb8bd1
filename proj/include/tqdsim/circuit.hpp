// Resonator geometry and the vacuum Rabi coupling estimate. The dot array sits
// in the gap of a high-impedance coplanar resonator; the zero-point voltage
// across the gap couples to the qubit dipole, giving
//   g0 = (e w chi0 / s) * omega_r * sqrt(Z0 / (pi hbar)),
// linear in omega_r and scaling like sqrt(Z0).
#pragma once

#include <stdexcept>

namespace tqdsim {

struct CircuitGeometry {
  double omega_r = 0.0;   // resonator frequency, rad/s
  double omega_tr = 0.0;  // transmon frequency for the resonant scheme, rad/s
  double z0 = 0.0;        // characteristic impedance, Ohm
  double chi0 = 0.0;      // gap-field participation, in (0, 1)
  double w = 0.0;         // dot spacing, m
  double s = 0.0;         // resonator gap, m
  double alpha = 0.0;     // transmon anharmonicity, rad/s, >= 0

  void validate() const;
};

// rad/s
double vacuum_rabi_g0(const CircuitGeometry& geom);

// dipole matrix element of the qubit transition is cos(theta) in units of e*w
double effective_coupling(double g0, double theta);

}  // namespace tqdsim
