#include "sphc/derived.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sphc/constants.hpp"
#include "sphc/errors.hpp"

namespace sphc {

double mode_frequency(const CavityParams& cavity, int k) {
    if (k < 1)
        throw ConfigError("mode index k must be >= 1, got " + std::to_string(k));
    return static_cast<double>(k) * std::numbers::pi /
           (cavity.length * std::sqrt(cavity.ind_per_len * cavity.cap_per_len));
}

double characteristic_impedance(const CavityParams& cavity) {
    return std::sqrt(cavity.ind_per_len / cavity.cap_per_len);
}

double effective_resistance(const ResistorParams& resistor, const CavityParams&) {
    const double s = std::sin(std::numbers::pi * resistor.position_fraction);
    return resistor.resistance * s * s;
}

double coupling_rate(const ResistorParams& resistor, const CavityParams& cavity) {
    if (resistor.coupling_override) return *resistor.coupling_override;
    return 2.0 * effective_resistance(resistor, cavity) /
           (cavity.length * cavity.ind_per_len);
}

double internal_loss_rate(const CavityParams& cavity) {
    return cavity.loss_per_len / cavity.ind_per_len;
}

double bose_occupancy(double omega, double temperature) {
    if (temperature <= 0.0)
        throw ConfigError("bose_occupancy requires temperature > 0");
    if (omega <= 0.0)
        throw ConfigError("bose_occupancy requires omega > 0");
    // 1/expm1 keeps full precision for small arguments and flushes to zero
    // (1/inf) once exp overflows.
    return 1.0 / std::expm1(constants::hbar * omega /
                            (constants::k_boltzmann * temperature));
}

DerivedQuantities compute_derived(const SystemParams& params) {
    params.validate();
    DerivedQuantities d;
    d.omega_k.reserve(static_cast<size_t>(params.n_modes));
    for (int k = 1; k <= params.n_modes; ++k)
        d.omega_k.push_back(mode_frequency(params.cavity, k));
    d.z0 = characteristic_impedance(params.cavity);
    d.r_eff1 = effective_resistance(params.resistor1, params.cavity);
    d.r_eff2 = effective_resistance(params.resistor2, params.cavity);
    d.gamma1 = coupling_rate(params.resistor1, params.cavity);
    d.gamma2 = coupling_rate(params.resistor2, params.cavity);
    d.gamma_int = internal_loss_rate(params.cavity);
    d.q_eff = d.omega_k.front() / (2.0 * (d.gamma1 + d.gamma2 + d.gamma_int));
    return d;
}

}  // namespace sphc
