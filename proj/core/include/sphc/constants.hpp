#pragma once

namespace sphc::constants {

// CODATA 2018 exact values. Not configurable.
inline constexpr double hbar = 1.054571817e-34;  // reduced Planck constant, J s
inline constexpr double k_boltzmann = 1.380649e-23;  // Boltzmann constant, J/K

}  // namespace sphc::constants
