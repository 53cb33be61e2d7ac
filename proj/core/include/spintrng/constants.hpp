#pragma once

#include <numbers>

// Physical constants (SI) and the gyromagnetic convention used throughout
// the integrator.

namespace spintrng::constants {

inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;  // vacuum permeability [T*m/A]
inline constexpr double k_boltzmann = 1.380649e-23;       // [J/K]
inline constexpr double hbar = 1.054571817e-34;           // reduced Planck [J*s]
inline constexpr double q_electron = 1.602176634e-19;     // elementary charge [C]

// Gyromagnetic ratio in the field form: precession rate = gamma0 * H with H
// in A/m.  The dynamics use the Gilbert-equivalent explicit form with the
// Landau-Lifshitz prefactor gamma0/(1+alpha^2).
inline constexpr double gamma0 = 2.2128e5;  // [m/(A*s)]

}  // namespace spintrng::constants
