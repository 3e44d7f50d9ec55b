#pragma once

#include <complex>
#include <vector>

#include "sphc/params.hpp"

namespace sphc {

/// Discrete ladder model of the cavity: n_nodes capacitively grounded nodes
/// joined by n_nodes - 1 series branches, open at both ends. Two branches are
/// resistive (the embedded resistors), the rest inductive with series loss.
struct LumpedNetwork {
    int n_nodes = 0;
    double dx = 0.0;              // L / (n_nodes - 1), m
    double cap_per_node = 0.0;    // c dx, F (interior nodes; ends carry half)
    double ind_per_branch = 0.0;  // l dx, H
    double loss_per_branch = 0.0; // r dx, Ohm
    double resistance1 = 0.0;     // Ohm
    double resistance2 = 0.0;
    int branch1 = 0;              // 1-based branch index of resistor 1
    int branch2 = 0;

    [[nodiscard]] int n_branches() const { return n_nodes - 1; }
};

/// Tridiagonal branch-current impedance matrix Z(omega) of the ladder,
/// Z(omega) I = dV. Symmetric: one shared off-diagonal.
struct ImpedanceMatrix {
    double frequency = 0.0;  // rad/s
    std::vector<std::complex<double>> diagonal;      // size n_branches
    std::vector<std::complex<double>> off_diagonal;  // size n_branches - 1

    [[nodiscard]] int dimension() const { return static_cast<int>(diagonal.size()); }
};

/// Maps the resistor positions onto branch indices round(x/L * (N-1)),
/// clamped to [1, N-1]. Rejects positions that land on the same branch.
[[nodiscard]] LumpedNetwork build_network(const SystemParams& params, int n_nodes);

/// Assembles Z(omega). Branch impedances are i omega l dx + r dx (inductive)
/// or R (resistive); shared ground capacitors couple neighbouring branches
/// with -1/(i omega c dx). End nodes carry half capacitors, which keeps the
/// ladder's current modes proportional to sin(k pi x / L) and its resonances
/// within O(N^-2) of the continuum omega_k. Rejects omega <= 0.
[[nodiscard]] ImpedanceMatrix build_impedance(const LumpedNetwork& network, double omega);

/// Element (row, col) of Z(omega)^-1, 1-based, obtained by solving the
/// tridiagonal system Z x = e_col with partial pivoting and reading x_row.
[[nodiscard]] std::complex<double> trans_impedance_element(const ImpedanceMatrix& matrix,
                                                           int row, int col);

/// Lossless resonance frequencies of the ladder (closed form), ascending.
[[nodiscard]] std::vector<double> lossless_resonances(const LumpedNetwork& network);

struct QuadratureOptions {
    int n_nodes = 100;
    double rel_tolerance = 1e-6;
    int max_depth = 60;
};

struct SemiclassicalResult {
    double power = 0.0;           // W, net into resistor 2
    double error_estimate = 0.0;  // W
    long evaluations = 0;
};

/// Johnson-Nyquist noise power from resistor 1 to resistor 2 through the
/// ladder, folded onto omega > 0:
///   P = (R1 R2 / pi) * Int_0^inf 2 hbar w |(Z^-1)_{21}(w)|^2
///                                 [n_B(w,T1) - n_B(w,T2)] dw.
/// Integrated by adaptive Gauss-Kronrod panels split at every ladder
/// resonance. Returns net power into resistor 2; throws SolverError when the
/// quadrature cannot reach the requested tolerance (reporting what it
/// achieved).
[[nodiscard]] SemiclassicalResult semiclassical_power(const SystemParams& params,
                                                      double t1, double t2,
                                                      const QuadratureOptions& options = {});

}  // namespace sphc
