#pragma once

#include <cstddef>
#include <string>

namespace topo {

enum class Gap { Zero, Pi };

inline double gap_energy(Gap g) { return g == Gap::Zero ? 0.0 : 3.14159265358979323846; }
std::string to_string(Gap g);

struct WindingResult {
    Gap epsilon = Gap::Zero;
    int value = 0;
    double raw_integral = 0.0;
    std::size_t k_points = 0;
    std::size_t t_points = 0;  // 0 for 1D
    double residual = 0.0;     // |raw_integral - value|
    double min_gap = 0.0;      // smallest quasienergy distance to ε on the grid
    bool flagged = false;      // residual above kWindingFlagThreshold
};

inline constexpr double kWindingFlagThreshold = 0.1;
inline constexpr std::size_t kDefaultKPoints1D = 1024;
inline constexpr std::size_t kDefaultKPoints2D = 64;
inline constexpr std::size_t kDefaultTPoints2D = 64;

// ν_ε = (i/4π)∫dk tr(τz U_ε⁻¹ ∂k U_ε) with the half-period periodized operator
//   U_ε(k) = U1(k, 1/2)·exp(+i·H_ε(k)/2)
// and H_ε the branch-cut effective Hamiltonian of the full cycle. The
// integral is oriented so that a left-edge mode counts +1 in both gaps: the
// zero mode lives on the spin-up sublattice (τz = +1) and the π mode on
// spin-down, so the ε = 0 integral enters with a minus sign.
// Throws GapClosed when the ε gap is closed on the grid.
WindingResult winding_1d(double alpha, double beta, Gap epsilon,
                         std::size_t k_points = kDefaultKPoints1D);

// W_ε = (1/8π²)∫dt d²k tr(U_ε⁻¹∂tU_ε [U_ε⁻¹∂kxU_ε, U_ε⁻¹∂kyU_ε]) with
// U_ε(k, t) = U2(k, t)·exp(+i·H_ε(k)·t). ∂t is exact inside each drive
// segment, k-derivatives are fourth-order central differences on the periodic
// grid (as in winding_1d), and
// `t_points` is rounded up to a multiple of the three segments (midpoint rule
// per segment).
WindingResult winding_2d(double gamma, double delta, Gap epsilon,
                         std::size_t k_points = kDefaultKPoints2D,
                         std::size_t t_points = kDefaultTPoints2D);

// Minimum gap distance over the grid, without evaluating the integral.
double min_gap_1d(double alpha, double beta, Gap epsilon, std::size_t k_points);
double min_gap_2d(double gamma, double delta, Gap epsilon, std::size_t k_points);

}  // namespace topo
