#pragma once

#include <cstddef>
#include <vector>

#include "topocirc/gate.hpp"

namespace topo {

// Mean displacements of a single excitation started on the spin-up qubit of
// the central site x0 = (N+1)/2, measured on the spin-down sublattice:
//   P(n)  = Σ_x (x - x0)·Prob(Q_{2x} excited) after (U1)^n
//   P'(n) = the same after (U1')^n
//   P0 = -P - P',  Pπ = P - P'
// The time averages of P0 and Pπ over n = 1..n_max approach (ν0, νπ).
struct DisplacementSeries {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t sites = 0;
    std::size_t n_max = 0;
    std::size_t center_site = 0;
    Qubit start_qubit = 0;

    // Index n-1 holds cycle n.
    std::vector<double> p_bar;
    std::vector<double> p_bar_prime;
    std::vector<double> p0;
    std::vector<double> p_pi;
    std::vector<double> running_center0;
    std::vector<double> running_center_pi;

    double center0 = 0.0;
    double center_pi = 0.0;
    // Largest |amplitude| seen on the two end sites, for the boundary guard.
    double max_boundary_amplitude = 0.0;
};

inline constexpr double kBoundaryReachTolerance = 1e-6;

// Requires odd N ≥ 4·n_max + 1, n_max ≥ 1. Throws GuardViolation when the
// excitation amplitude on the end sites exceeds kBoundaryReachTolerance.
DisplacementSeries mean_displacement(double alpha, double beta, std::size_t sites,
                                     std::size_t n_max);

}  // namespace topo
