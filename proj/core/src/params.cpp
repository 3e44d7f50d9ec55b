#include "sphc/params.hpp"

#include <string>

#include "sphc/errors.hpp"

namespace sphc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid parameter: " + what);
}

}  // namespace

void CavityParams::validate() const {
    require(length > 0.0, "cavity.length must be > 0");
    require(cap_per_len > 0.0, "cavity.cap_per_len must be > 0");
    require(ind_per_len > 0.0, "cavity.ind_per_len must be > 0");
    require(loss_per_len >= 0.0, "cavity.loss_per_len must be >= 0");
}

void ResistorParams::validate(const char* label) const {
    const std::string who(label);
    require(resistance > 0.0, who + ".resistance must be > 0");
    require(position_fraction > 0.0 && position_fraction < 1.0,
            who + ".position_fraction must be in (0, 1)");
    require(volume > 0.0, who + ".volume must be > 0");
    require(sigma_ep > 0.0, who + ".sigma_ep must be > 0");
    if (coupling_override)
        require(*coupling_override > 0.0, who + ".coupling_override must be > 0");
}

void SystemParams::validate() const {
    cavity.validate();
    resistor1.validate("resistor1");
    resistor2.validate("resistor2");
    require(bath_temperature > 0.0, "bath_temperature must be > 0");
    require(n_modes >= 1, "n_modes must be >= 1");
    require(n_photons_max >= 2, "n_photons_max must be >= 2");
}

}  // namespace sphc
