#pragma once

#include <span>
#include <vector>

#include "sphc/params.hpp"

namespace sphc {

/// One thermal bath seen by the cavity: a resistor, or the intrinsic loss
/// channel pinned at the phonon bath temperature.
struct BathSpec {
    double rate = 0.0;         // gamma coefficient, s^-1
    double temperature = 0.0;  // K
};

/// Golden-rule transition-rate coefficients of one cavity mode.
///
/// The photon ladder is a birth-death chain with
///   Gamma_{n -> n+1} = (n + 1) A_k,   Gamma_{n -> n-1} = n B_k,
/// where A_k = sum_i gamma_i n_B(omega_k, T_i) and
/// B_k = sum_i gamma_i (n_B(omega_k, T_i) + 1).
struct ModeRates {
    int mode_index = 0;   // k >= 1
    double omega = 0.0;   // omega_k, rad/s
    double up_coefficient = 0.0;    // A_k
    double down_coefficient = 0.0;  // B_k
    std::vector<double> per_bath_up;
    std::vector<double> per_bath_down;
};

/// Stationary photon-number distribution of one mode, truncated at n_max.
struct StationaryDistribution {
    int mode_index = 0;
    std::vector<double> probabilities;  // p_n, n = 0..n_max
    double truncation_tail = 0.0;       // (A/B)^(n_max+1), neglected mass estimate
};

/// Net stationary powers. Sign convention: positive = into the named object.
struct PowerBreakdown {
    std::vector<double> per_resistor_net_power;  // W, index = bath index
    std::vector<double> per_mode_power;          // W, net into resistor 2 per mode
    double internal_loss_power = 0.0;            // W, into the intrinsic-loss bath
    double electron_phonon_power = 0.0;          // W, out of resistor-2 electrons
};

/// Output of the self-consistent quasiequilibrium solve.
struct EquilibriumResult {
    double t2 = 0.0;  // K
    PowerBreakdown powers;
    std::vector<StationaryDistribution> distributions;  // one per mode
    int iterations = 0;
    double residual = 0.0;  // |T2 - g(T2)| at exit, K
};

/// Per-bath up/down coefficients of mode k. Rejects an empty bath list and
/// non-positive temperatures.
[[nodiscard]] ModeRates transition_rates(int mode_index, std::span<const BathSpec> baths,
                                         double omega_k);

/// Closed-form stationary law of the truncated birth-death chain: geometric,
/// p_{n+1}/p_n = A_k/B_k. Fails if A_k >= B_k (no normalizable state).
[[nodiscard]] StationaryDistribution stationary_distribution(const ModeRates& rates,
                                                             int n_max);

/// Net photonic power into bath m, summed over modes:
///   P_m = sum_k hbar omega_k sum_n (n B_mk - (n+1) A_mk) p^k_n,
/// with the (n+1) A_mk term absent at n = n_max (the truncated generator has
/// no transition out of the top state). Positive = cavity heats bath m.
[[nodiscard]] double net_power_to_resistor(size_t bath_index,
                                           std::span<const StationaryDistribution> distributions,
                                           std::span<const ModeRates> rates);

/// Electron-phonon heat flow Sigma V (T_el^5 - T_bath^5); positive = heat
/// leaves the electrons.
[[nodiscard]] double electron_phonon_power(const ResistorParams& resistor,
                                           double t_electron, double t_bath);

/// Effective cavity temperature from the fundamental-mode rate ratio,
/// T_eff = hbar omega_1 / (kB ln(B_1/A_1)). Returns 0 when A_1 = 0 (the
/// zero-temperature limit) instead of dividing.
[[nodiscard]] double effective_temperature(const ModeRates& rates_mode1, double omega_1);

/// Analytic two-level (0/1 photon, fundamental mode) net power transferred
/// OUT of resistor 2:
///   P = hbar omega_1 (G2+ G- - G2- G+) / (G+ + G-).
/// Negative when heat flows into resistor 2.
[[nodiscard]] double two_level_power(const BathSpec& bath1, const BathSpec& bath2,
                                     double omega_1);

/// Stationary rates and photon distributions with both resistor temperatures
/// held fixed (no self-consistency loop). The bath layout is
/// [resistor1, resistor2, internal-loss] with the last entry present only
/// when the cavity has loss_per_len > 0.
struct FixedTemperatureState {
    std::vector<ModeRates> rates;                       // one per mode
    std::vector<StationaryDistribution> distributions;  // one per mode
};

[[nodiscard]] FixedTemperatureState stationary_state(const SystemParams& params,
                                                     double t1, double t2);

/// Solver knobs for solve_equilibrium_t2.
struct FixedPointOptions {
    double tolerance = 1e-9;  // K, on the T2 update
    int max_iterations = 1000;
    double t_min = 1e-4;      // K, lower bracket for the bisection fallback
};

/// Solves T2 = (P2(T2)/(Sigma V) + T^5)^(1/5) self-consistently for the
/// quasiequilibrium temperature of resistor 2, with resistor 1 held at t1.
///
/// Damped fixed-point iteration (alpha = 1/2) starting from T2 = T; falls
/// back to bisection on the residual if the iterates oscillate or leave the
/// physical domain. Throws SolverError after max_iterations without
/// convergence, reporting the last residual.
[[nodiscard]] EquilibriumResult solve_equilibrium_t2(const SystemParams& params, double t1,
                                                     const FixedPointOptions& options = {});

}  // namespace sphc
