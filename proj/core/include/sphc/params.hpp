#pragma once

#include <optional>

namespace sphc {

/// Distributed electrical constants of the coplanar-waveguide cavity.
struct CavityParams {
    double length = 0.0;        // L, m
    double cap_per_len = 0.0;   // c, F/m
    double ind_per_len = 0.0;   // l, H/m
    double loss_per_len = 0.0;  // r, Ohm/m (intrinsic dissipation; 0 = lossless)

    void validate() const;
};

/// One normal-metal resistor embedded in the cavity.
struct ResistorParams {
    double resistance = 0.0;         // R_i, Ohm
    double position_fraction = 0.0;  // x_i/L, in (0, 1)
    double volume = 0.0;             // V, m^3
    double sigma_ep = 0.0;           // electron-phonon constant Sigma, W m^-3 K^-5

    // When set, used verbatim as the cavity coupling rate (s^-1) instead of
    // the geometric formula 2 R_eff / (L l).
    std::optional<double> coupling_override;

    void validate(const char* label) const;
};

/// Complete physical description of the two-resistor cavity system.
struct SystemParams {
    CavityParams cavity;
    ResistorParams resistor1;
    ResistorParams resistor2;
    double bath_temperature = 0.0;  // phonon bath T, K
    int n_modes = 10;               // cavity modes kept in sums
    int n_photons_max = 50;         // photon-number truncation per mode

    void validate() const;
};

}  // namespace sphc
