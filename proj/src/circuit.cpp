#include "tqdsim/circuit.hpp"

#include <cmath>

#include "tqdsim/units.hpp"

namespace tqdsim {

void CircuitGeometry::validate() const {
  if (omega_r <= 0.0) throw std::invalid_argument("CircuitGeometry: omega_r must be positive");
  if (z0 <= 0.0) throw std::invalid_argument("CircuitGeometry: Z0 must be positive");
  if (!(chi0 > 0.0 && chi0 < 1.0))
    throw std::invalid_argument("CircuitGeometry: chi0 must lie in (0, 1)");
  if (w <= 0.0 || s <= 0.0)
    throw std::invalid_argument("CircuitGeometry: w and s must be positive");
  if (alpha < 0.0) throw std::invalid_argument("CircuitGeometry: alpha must be >= 0");
}

double vacuum_rabi_g0(const CircuitGeometry& geom) {
  geom.validate();
  return kElementaryCharge * (geom.w / geom.s) * geom.chi0 * geom.omega_r *
         std::sqrt(geom.z0 / (kPi * kHBar));
}

double effective_coupling(double g0, double theta) { return g0 * std::cos(theta); }

}  // namespace tqdsim
