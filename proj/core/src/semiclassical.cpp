#include "sphc/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "sphc/constants.hpp"
#include "sphc/derived.hpp"
#include "sphc/errors.hpp"

namespace sphc {

namespace {

using cplx = std::complex<double>;
using constants::hbar;
using constants::k_boltzmann;

/// Solves the symmetric tridiagonal system (diag, off) x = b in place with
/// partial pivoting (LAPACK gtsv scheme; fill-in limited to one extra
/// superdiagonal). Returns false on a singular pivot.
bool solve_tridiagonal(std::vector<cplx> d, const std::vector<cplx>& off,
                       std::vector<cplx>& x) {
    const int n = static_cast<int>(d.size());
    if (n == 1) {
        if (d[0] == 0.0) return false;
        x[0] /= d[0];
        return true;
    }
    std::vector<cplx> du(off);
    std::vector<cplx> du2(static_cast<size_t>(std::max(n - 2, 0)), 0.0);
    for (int k = 0; k < n - 1; ++k) {
        const cplx dl = off[k];  // subdiagonal of the original symmetric matrix
        if (std::abs(d[k]) >= std::abs(dl)) {
            if (d[k] == 0.0) return false;
            const cplx fact = dl / d[k];
            d[k + 1] -= fact * du[k];
            x[k + 1] -= fact * x[k];
        } else {
            const cplx fact = d[k] / dl;
            d[k] = dl;
            const cplx tmp = d[k + 1];
            d[k + 1] = du[k] - fact * tmp;
            du[k] = tmp;
            if (k < n - 2) {
                du2[k] = du[k + 1];
                du[k + 1] = -fact * du2[k];
            }
            std::swap(x[k], x[k + 1]);
            x[k + 1] -= fact * x[k];
        }
    }
    if (d[n - 1] == 0.0) return false;
    x[n - 1] /= d[n - 1];
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (int k = n - 3; k >= 0; --k)
        x[k] = (x[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / d[k];
    return true;
}

}  // namespace

LumpedNetwork build_network(const SystemParams& params, int n_nodes) {
    params.validate();
    if (n_nodes < 10)
        throw ConfigError("build_network: n_nodes must be >= 10");
    LumpedNetwork net;
    net.n_nodes = n_nodes;
    net.dx = params.cavity.length / (n_nodes - 1);
    net.cap_per_node = params.cavity.cap_per_len * net.dx;
    net.ind_per_branch = params.cavity.ind_per_len * net.dx;
    net.loss_per_branch = params.cavity.loss_per_len * net.dx;
    net.resistance1 = params.resistor1.resistance;
    net.resistance2 = params.resistor2.resistance;
    auto to_branch = [n_nodes](double frac) {
        const int idx = static_cast<int>(std::lround(frac * (n_nodes - 1)));
        return std::clamp(idx, 1, n_nodes - 1);
    };
    net.branch1 = to_branch(params.resistor1.position_fraction);
    net.branch2 = to_branch(params.resistor2.position_fraction);
    if (net.branch1 == net.branch2) {
        std::ostringstream msg;
        msg << "build_network: both resistors map to branch " << net.branch1
            << " at N = " << n_nodes;
        throw ConfigError(msg.str());
    }
    return net;
}

ImpedanceMatrix build_impedance(const LumpedNetwork& network, double omega) {
    if (omega <= 0.0)
        throw ConfigError("build_impedance: omega must be > 0 (capacitive terms singular at 0)");
    const int m = network.n_branches();
    ImpedanceMatrix z;
    z.frequency = omega;
    z.diagonal.resize(static_cast<size_t>(m));
    z.off_diagonal.assign(static_cast<size_t>(m - 1), 0.0);
    const cplx zc = 1.0 / (cplx(0.0, omega) * network.cap_per_node);
    for (int b = 1; b <= m; ++b) {
        cplx zb = cplx(0.0, omega * network.ind_per_branch) + network.loss_per_branch;
        if (b == network.branch1) zb = network.resistance1;
        if (b == network.branch2) zb = network.resistance2;
        // Interior branches see a full capacitor on each side; end branches
        // see one full interior capacitor plus the half capacitor of the
        // open end (1/(i w c dx / 2) = 2 zc).
        const double weight = (b == 1 || b == m) ? 3.0 : 2.0;
        z.diagonal[static_cast<size_t>(b - 1)] = zb + weight * zc;
    }
    for (auto& v : z.off_diagonal) v = -zc;
    return z;
}

std::complex<double> trans_impedance_element(const ImpedanceMatrix& matrix, int row,
                                             int col) {
    const int n = matrix.dimension();
    if (row < 1 || row > n || col < 1 || col > n)
        throw ConfigError("trans_impedance_element: index out of range");
    std::vector<cplx> x(static_cast<size_t>(n), 0.0);
    x[static_cast<size_t>(col - 1)] = 1.0;
    if (!solve_tridiagonal(matrix.diagonal, matrix.off_diagonal, x)) {
        std::ostringstream msg;
        msg << "trans_impedance_element: singular impedance matrix at omega = "
            << matrix.frequency << " rad/s";
        throw SolverError(msg.str());
    }
    return x[static_cast<size_t>(row - 1)];
}

std::vector<double> lossless_resonances(const LumpedNetwork& network) {
    // Eigenvalues of the branch coupling matrix with half-capacitor ends are
    // 4 sin^2(m pi / (2 M)), M = n_branches, giving
    //   omega_m = 2 sin(m pi / (2 M)) / sqrt(l dx * c dx).
    const int m_total = network.n_branches();
    const double scale = 1.0 / std::sqrt(network.ind_per_branch * network.cap_per_node);
    std::vector<double> res;
    res.reserve(static_cast<size_t>(m_total));
    for (int m = 1; m <= m_total; ++m)
        res.push_back(2.0 * std::sin(0.5 * m * std::numbers::pi / m_total) * scale);
    return res;
}

namespace {

struct GkEstimate {
    double kronrod = 0.0;
    double gauss = 0.0;
};

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b,
                long& evaluations) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    evaluations += 15;
    return {kron * h, gauss * h};
}

struct PanelIntegrator {
    const std::function<double(double)>& f;
    double rel_tol;
    double abs_floor;
    int max_depth;
    long evaluations = 0;
    double error_sum = 0.0;
    bool depth_exhausted = false;

    double integrate(double a, double b, int depth) {
        const GkEstimate e = gk15(f, a, b, evaluations);
        const double err = std::abs(e.kronrod - e.gauss);
        if (err <= std::max(abs_floor, rel_tol * std::abs(e.kronrod)) ||
            depth >= max_depth) {
            if (depth >= max_depth && err > std::max(abs_floor, rel_tol * std::abs(e.kronrod)))
                depth_exhausted = true;
            error_sum += err;
            return e.kronrod;
        }
        const double mid = 0.5 * (a + b);
        return integrate(a, mid, depth + 1) + integrate(mid, b, depth + 1);
    }
};

}  // namespace

SemiclassicalResult semiclassical_power(const SystemParams& params, double t1, double t2,
                                        const QuadratureOptions& options) {
    if (t1 <= 0.0 || t2 <= 0.0)
        throw ConfigError("semiclassical_power: temperatures must be > 0");
    const LumpedNetwork net = build_network(params, options.n_nodes);
    const double omega1 = mode_frequency(params.cavity, 1);

    auto integrand = [&](double w) {
        const ImpedanceMatrix z = build_impedance(net, w);
        const cplx t = trans_impedance_element(z, net.branch2, net.branch1);
        const double occ_diff = bose_occupancy(w, t1) - bose_occupancy(w, t2);
        return 2.0 * hbar * w * std::norm(t) * occ_diff;
    };

    // Panels split at every ladder resonance so the adaptive rule refines
    // into the Lorentzian peaks sitting on the panel edges.
    const double w_lo = 1e-4 * omega1;
    const double w_hi = std::max(30.0 * omega1,
                                 40.0 * k_boltzmann * std::max(t1, t2) / hbar);
    std::vector<double> edges{w_lo};
    for (double w : lossless_resonances(net))
        if (w > w_lo && w < w_hi) edges.push_back(w);
    edges.push_back(w_hi);

    std::function<double(double)> f = integrand;
    PanelIntegrator worker{f, options.rel_tolerance, 0.0, options.max_depth};

    // Coarse pass fixes the absolute scale for the refinement floor.
    double coarse = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        coarse += gk15(f, edges[i], edges[i + 1], worker.evaluations).kronrod;
    }
    worker.abs_floor = options.rel_tolerance * std::abs(coarse) * 1e-3;

    double total = 0.0;
    worker.error_sum = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        total += worker.integrate(edges[i], edges[i + 1], 0);

    const double scale = std::max(std::abs(total), std::abs(coarse));
    if (worker.depth_exhausted &&
        worker.error_sum > 10.0 * options.rel_tolerance * scale) {
        std::ostringstream msg;
        msg << "semiclassical_power: quadrature did not converge; achieved error "
            << worker.error_sum << " W against requested relative tolerance "
            << options.rel_tolerance;
        throw SolverError(msg.str());
    }

    SemiclassicalResult out;
    out.power = total * net.resistance1 * net.resistance2 / std::numbers::pi;
    out.error_estimate =
        worker.error_sum * net.resistance1 * net.resistance2 / std::numbers::pi;
    out.evaluations = worker.evaluations;
    return out;
}

}  // namespace sphc
