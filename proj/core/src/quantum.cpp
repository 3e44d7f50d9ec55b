#include "sphc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sphc/constants.hpp"
#include "sphc/derived.hpp"
#include "sphc/errors.hpp"

namespace sphc {

namespace {

using constants::hbar;
using constants::k_boltzmann;

double pow5(double x) { return x * x * x * x * x; }

}  // namespace

ModeRates transition_rates(int mode_index, std::span<const BathSpec> baths,
                           double omega_k) {
    if (baths.empty())
        throw ConfigError("transition_rates: bath list must not be empty");
    ModeRates r;
    r.mode_index = mode_index;
    r.omega = omega_k;
    r.per_bath_up.reserve(baths.size());
    r.per_bath_down.reserve(baths.size());
    for (const BathSpec& b : baths) {
        if (b.temperature <= 0.0)
            throw ConfigError("transition_rates: bath temperature must be > 0");
        if (b.rate < 0.0)
            throw ConfigError("transition_rates: bath rate must be >= 0");
        const double n = bose_occupancy(omega_k, b.temperature);
        r.per_bath_up.push_back(b.rate * n);
        r.per_bath_down.push_back(b.rate * (n + 1.0));
        r.up_coefficient += b.rate * n;
        r.down_coefficient += b.rate * (n + 1.0);
    }
    return r;
}

StationaryDistribution stationary_distribution(const ModeRates& rates, int n_max) {
    if (rates.down_coefficient <= 0.0)
        throw SolverError("stationary_distribution: B_k must be positive");
    const double lambda = rates.up_coefficient / rates.down_coefficient;
    if (lambda >= 1.0) {
        std::ostringstream msg;
        msg << "stationary_distribution: A_k >= B_k (ratio " << lambda
            << "), no normalizable stationary state for mode " << rates.mode_index;
        throw SolverError(msg.str());
    }
    StationaryDistribution d;
    d.mode_index = rates.mode_index;
    d.probabilities.resize(static_cast<size_t>(n_max) + 1);
    double v = 1.0, sum = 0.0;
    for (auto& p : d.probabilities) {
        p = v;
        sum += v;
        v *= lambda;
    }
    for (auto& p : d.probabilities) p /= sum;
    d.truncation_tail = std::pow(lambda, n_max + 1);
    return d;
}

double net_power_to_resistor(size_t bath_index,
                             std::span<const StationaryDistribution> distributions,
                             std::span<const ModeRates> rates) {
    if (distributions.size() != rates.size())
        throw ConfigError("net_power_to_resistor: distributions and rates must cover the same modes");
    double total = 0.0;
    for (size_t m = 0; m < rates.size(); ++m) {
        if (bath_index >= rates[m].per_bath_up.size())
            throw ConfigError("net_power_to_resistor: bath index out of range");
        const double up = rates[m].per_bath_up[bath_index];
        const double down = rates[m].per_bath_down[bath_index];
        const auto& p = distributions[m].probabilities;
        const size_t top = p.size() - 1;
        double s = 0.0;
        for (size_t n = 0; n <= top; ++n) {
            // No upward transition out of the truncated top state; this keeps
            // detailed balance exact on every edge of the finite chain.
            const double up_weight = (n < top) ? (static_cast<double>(n) + 1.0) * up : 0.0;
            s += (static_cast<double>(n) * down - up_weight) * p[n];
        }
        total += hbar * rates[m].omega * s;
    }
    return total;
}

double electron_phonon_power(const ResistorParams& resistor, double t_electron,
                             double t_bath) {
    if (t_electron <= 0.0 || t_bath <= 0.0)
        throw ConfigError("electron_phonon_power: temperatures must be > 0");
    return resistor.sigma_ep * resistor.volume * (pow5(t_electron) - pow5(t_bath));
}

double effective_temperature(const ModeRates& rates_mode1, double omega_1) {
    const double a = rates_mode1.up_coefficient;
    if (a <= 0.0) return 0.0;  // zero-temperature limit
    // B = A + sum_i gamma_i, so ln(B/A) = log1p(sum gamma / A); the log1p form
    // keeps T_eff = T exact in the single-bath limit.
    double gamma_sum = 0.0;
    for (size_t i = 0; i < rates_mode1.per_bath_up.size(); ++i)
        gamma_sum += rates_mode1.per_bath_down[i] - rates_mode1.per_bath_up[i];
    return hbar * omega_1 / (k_boltzmann * std::log1p(gamma_sum / a));
}

double two_level_power(const BathSpec& bath1, const BathSpec& bath2, double omega_1) {
    const double n1 = bose_occupancy(omega_1, bath1.temperature);
    const double n2 = bose_occupancy(omega_1, bath2.temperature);
    const double g1 = bath1.rate, g2 = bath2.rate;
    const double gamma_sum = g1 * (2.0 * n1 + 1.0) + g2 * (2.0 * n2 + 1.0);
    // G2+ G- - G2- G+ reduces algebraically to g1 g2 (n2 - n1); the factored
    // form cancels identically at equal temperatures.
    return hbar * omega_1 * g1 * g2 * (n2 - n1) / gamma_sum;
}

namespace {

struct BathSetup {
    std::vector<BathSpec> baths;  // [resistor1, resistor2, (internal)]
    bool has_internal = false;
};

BathSetup make_baths(const DerivedQuantities& d, double t1, double t2, double t_bath) {
    BathSetup s;
    s.baths.push_back({d.gamma1, t1});
    s.baths.push_back({d.gamma2, t2});
    if (d.gamma_int > 0.0) {
        s.baths.push_back({d.gamma_int, t_bath});
        s.has_internal = true;
    }
    return s;
}

struct StationarySolve {
    std::vector<ModeRates> rates;
    std::vector<StationaryDistribution> distributions;
};

StationarySolve solve_modes(const SystemParams& params, const DerivedQuantities& d,
                            std::span<const BathSpec> baths) {
    StationarySolve out;
    out.rates.reserve(d.omega_k.size());
    out.distributions.reserve(d.omega_k.size());
    for (size_t i = 0; i < d.omega_k.size(); ++i) {
        out.rates.push_back(
            transition_rates(static_cast<int>(i) + 1, baths, d.omega_k[i]));
        out.distributions.push_back(
            stationary_distribution(out.rates.back(), params.n_photons_max));
    }
    return out;
}

}  // namespace

FixedTemperatureState stationary_state(const SystemParams& params, double t1,
                                       double t2) {
    params.validate();
    if (t1 <= 0.0 || t2 <= 0.0)
        throw ConfigError("stationary_state: temperatures must be > 0");
    const DerivedQuantities d = compute_derived(params);
    const BathSetup s = make_baths(d, t1, t2, params.bath_temperature);
    StationarySolve m = solve_modes(params, d, s.baths);
    return {std::move(m.rates), std::move(m.distributions)};
}

EquilibriumResult solve_equilibrium_t2(const SystemParams& params, double t1,
                                       const FixedPointOptions& options) {
    params.validate();
    if (t1 <= 0.0) throw ConfigError("solve_equilibrium_t2: t1 must be > 0");
    const DerivedQuantities d = compute_derived(params);
    const double t_bath = params.bath_temperature;
    const double sv = params.resistor2.sigma_ep * params.resistor2.volume;
    const double t_floor = options.t_min;

    // Net photonic power into resistor 2 with resistor 2 held at trial t2.
    auto cavity_power = [&](double t2) {
        const BathSetup s = make_baths(d, t1, t2, t_bath);
        const StationarySolve m = solve_modes(params, d, s.baths);
        return net_power_to_resistor(1, m.distributions, m.rates);
    };
    // Fixed-point map of Eq. T2 = (P2/(Sigma V) + T^5)^(1/5). Trial points
    // cold enough to make the argument non-positive map to the floor.
    auto g = [&](double t2) {
        const double arg = cavity_power(t2) / sv + pow5(t_bath);
        return arg > 0.0 ? std::pow(arg, 0.2) : t_floor;
    };

    int iterations = 0;
    double t2 = t_bath;
    double prev_step = 0.0;
    bool bisect = false;
    for (; iterations < options.max_iterations; ++iterations) {
        const double mapped = g(t2);
        const double next = 0.5 * (t2 + mapped);
        const double step = next - t2;
        if (std::abs(step) < options.tolerance) {
            t2 = next;
            break;
        }
        // Oscillation without contraction: the damped map is not settling,
        // switch to bisection on the residual.
        if (iterations > 0 && step * prev_step < 0.0 &&
            std::abs(step) >= std::abs(prev_step)) {
            bisect = true;
            break;
        }
        prev_step = step;
        t2 = next;
    }

    if (bisect) {
        double lo = t_floor;
        double hi = 1.5 * std::max(t1, t_bath);
        auto residual = [&](double x) { return x - g(x); };
        double flo = residual(lo);
        double fhi = residual(hi);
        if (flo * fhi > 0.0)
            throw SolverError("solve_equilibrium_t2: bisection bracket failed");
        for (; iterations < options.max_iterations; ++iterations) {
            const double mid = 0.5 * (lo + hi);
            const double fm = residual(mid);
            if (fm == 0.0 || 0.5 * (hi - lo) < options.tolerance) {
                t2 = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
            t2 = mid;
        }
    }

    const double final_residual = std::abs(t2 - g(t2));
    if (iterations >= options.max_iterations && final_residual > options.tolerance) {
        std::ostringstream msg;
        msg << "solve_equilibrium_t2: no convergence after " << options.max_iterations
            << " iterations, last residual " << final_residual << " K";
        throw SolverError(msg.str());
    }

    EquilibriumResult res;
    res.t2 = t2;
    res.iterations = iterations;
    res.residual = final_residual;
    const BathSetup s = make_baths(d, t1, t2, t_bath);
    StationarySolve m = solve_modes(params, d, s.baths);
    res.powers.per_resistor_net_power = {
        net_power_to_resistor(0, m.distributions, m.rates),
        net_power_to_resistor(1, m.distributions, m.rates)};
    if (s.has_internal)
        res.powers.internal_loss_power = net_power_to_resistor(2, m.distributions, m.rates);
    res.powers.per_mode_power.reserve(m.rates.size());
    for (size_t i = 0; i < m.rates.size(); ++i) {
        res.powers.per_mode_power.push_back(net_power_to_resistor(
            1, std::span(&m.distributions[i], 1), std::span(&m.rates[i], 1)));
    }
    res.powers.electron_phonon_power = electron_phonon_power(params.resistor2, t2, t_bath);
    res.distributions = std::move(m.distributions);
    return res;
}

}  // namespace sphc
