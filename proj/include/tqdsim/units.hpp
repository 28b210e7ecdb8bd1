// Unit conventions and the two physical constants the coupling estimate needs.
// Every frequency-like quantity inside the library is angular (rad/s); the CLI
// and all files on disk use plain Hz, i.e. value/2pi.
#pragma once

namespace tqdsim {

inline constexpr double kTwoPi = 6.283185307179586476925287;
inline constexpr double kPi = kTwoPi / 2.0;

// SI, 9 significant digits
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kHBar = 1.054571817e-34;              // J s

constexpr double angular(double f_hz) { return kTwoPi * f_hz; }
constexpr double in_hz(double omega) { return omega / kTwoPi; }

}  // namespace tqdsim
