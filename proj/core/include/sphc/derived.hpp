#pragma once

#include <vector>

#include "sphc/params.hpp"

namespace sphc {

/// Closed-form quantities derived from SystemParams. All rates in s^-1.
struct DerivedQuantities {
    std::vector<double> omega_k;  // mode angular frequencies, omega_k[i] for k = i+1
    double z0 = 0.0;              // characteristic impedance sqrt(l/c), Ohm
    double r_eff1 = 0.0;          // R_1 sin^2(pi x_1/L), Ohm
    double r_eff2 = 0.0;
    double gamma1 = 0.0;          // cavity coupling rate of resistor 1
    double gamma2 = 0.0;
    double gamma_int = 0.0;       // intrinsic-loss rate r/l
    double q_eff = 0.0;           // omega_1 / (2 (gamma1 + gamma2 + gamma_int))
};

/// omega_k = k pi / (L sqrt(l c)); rejects k < 1 (no zero mode in the cosine basis).
[[nodiscard]] double mode_frequency(const CavityParams& cavity, int k);

/// Z0 = sqrt(l / c).
[[nodiscard]] double characteristic_impedance(const CavityParams& cavity);

/// R_eff = R sin^2(pi x/L).
[[nodiscard]] double effective_resistance(const ResistorParams& resistor,
                                          const CavityParams& cavity);

/// Coupling rate of one resistor to every cavity mode.
///
/// Returns the explicit override when the resistor carries one; otherwise the
/// geometric value 2 R_eff / (L l), which equals 2 omega_1 R_eff / (pi Z0)
/// identically.
[[nodiscard]] double coupling_rate(const ResistorParams& resistor,
                                   const CavityParams& cavity);

/// Decay rate of the bare lossy line, gamma_int = r / l.
[[nodiscard]] double internal_loss_rate(const CavityParams& cavity);

/// Bose-Einstein occupancy 1 / (exp(hbar omega / kB T) - 1), evaluated via
/// expm1 so that large hbar omega / kB T underflows cleanly to 0.
[[nodiscard]] double bose_occupancy(double omega, double temperature);

/// Computes the full derived set for a validated system.
[[nodiscard]] DerivedQuantities compute_derived(const SystemParams& params);

}  // namespace sphc
