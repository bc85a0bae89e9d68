#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "topocirc/composite.hpp"

namespace topo {

// Piecewise-constant drive over one period T = 1, split into equal segments.
// Segment j evolves as exp(-i·f·G_j) with f ∈ [0, 1] its completed fraction,
// so ∂_t U = -i·S·G_j·U inside segment j of S.
struct PiecewiseCycle {
    std::vector<Mat2> generators;

    std::size_t segments() const noexcept { return generators.size(); }
    // Time-ordered evolution from 0 to t ∈ [0, 1].
    Mat2 evolve(double t) const;
    // Index of the segment containing t (the last one for t = 1).
    std::size_t segment_at(double t) const;
};

// exp(-i·G) for Hermitian 2x2 G.
Mat2 expm_i_hermitian(const Mat2& g);

// Bloch form of the two-qubit coupling between cell x (spin down) and cell
// x+1 (spin up): [[0, e^{-ik}], [e^{ik}, 0]] in the (up, down) spinor basis.
Mat2 hopping_matrix(double k);

// Cell spinor (up, down). Segments: on-site (α/4)σx, SOC (β/2)·hopping(k),
// on-site (α/4)σx.
PiecewiseCycle bloch_cycle_1d(double k, double alpha, double beta);
// Segments: on-site (π/4)σx, x-SOC (γ/4)·hopping(kx), y-SOC (δ/2)·hopping(ky).
PiecewiseCycle bloch_cycle_2d(double kx, double ky, double gamma, double delta);

Mat2 bloch_u1(double k, double alpha, double beta, double t = 1.0);
Mat2 bloch_u2(double kx, double ky, double gamma, double delta, double t = 1.0);

// Uniform grid -π + 2πj/n, j = 0..n-1.
std::vector<double> uniform_k_grid(std::size_t n);

// Quasienergies E = -arg(eigenvalue) ∈ (-π, π], ascending.
std::array<double, 2> quasienergies(const Mat2& u);

// Distance (on the circle) from the nearest quasienergy of `u` to `epsilon`.
double gap_distance(const Mat2& u, double epsilon);

struct QuasienergyBands {
    std::vector<double> k;
    std::vector<double> lower;  // E-(k)
    std::vector<double> upper;  // E+(k)
    double gap0 = 0.0;          // min over k of the distance of either band to 0
    double gap_pi = 0.0;        // same for π
};

QuasienergyBands quasienergy_bands(double alpha, double beta, const std::vector<double>& k_grid);

// H = i·log U (T = 1) with eigen-quasienergies chosen in (ε - 2π, ε).
// Throws GapClosed when an eigenphase sits within kBranchCutTolerance of ε.
inline constexpr double kBranchCutTolerance = 1e-9;
Mat2 branch_log_hamiltonian(const Mat2& u, double epsilon);

// exp(+i·H·t) for the Hermitian output of branch_log_hamiltonian.
Mat2 expm_plus_i(const Mat2& h, double t);

}  // namespace topo
