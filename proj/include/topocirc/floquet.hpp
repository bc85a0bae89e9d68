#pragma once

#include <cstddef>

#include "topocirc/circuit.hpp"
#include "topocirc/engine.hpp"
#include "topocirc/lattice.hpp"

namespace topo {

// Drive angles in radians. The circuits are parameterized by the rotation
// each step imprints, θ = J·T/3 for a coupling J held over one third of the
// period T:
//
//   1D:  on-site  J_o = 3α/4T  ->  θ = α/4
//        SOC      J_s = 3β/2T  ->  θ = β/2
//   2D:  on-site  J_os = 3π/4T ->  θ = π/4
//        x-SOC    J_sx = 3γ/4T ->  θ = γ/4
//        y-SOC    J_sy = 3δ/2T ->  θ = δ/2
//
// With this bookkeeping the closed-form edge states with decay factors
// -tan(α/4)cot(β/4) and cot(α/4)cot(β/4) are exact eigenstates of one cycle.
inline double onsite_angle_1d(double alpha) { return alpha / 4; }
inline double soc_angle_1d(double beta) { return beta / 2; }
inline double onsite_angle_2d() { return 3.14159265358979323846 / 4; }
inline double soc_x_angle_2d(double gamma) { return gamma / 4; }
inline double soc_y_angle_2d(double delta) { return delta / 2; }

struct FloquetParams1D {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t sites = 2;
    std::size_t cycles = 1;

    void validate() const;
};

struct FloquetParams2D {
    double gamma = 0.0;
    double delta = 0.0;
    std::size_t nx = 2;
    std::size_t ny = 2;
    std::size_t cycles = 1;

    void validate() const;
};

// One U1 cycle, three layers in time order:
//   on-site CompositeU(α/4) on (Q_{2x-1}, Q_{2x}) for x = 1..N
//   SOC     CompositeU(β/2) on (Q_{2x}, Q_{2x+1}) for x = 1..N-1
//   on-site CompositeU(α/4) again
Circuit build_u1_cycle(const FloquetParams1D& params);
// `params.cycles` repetitions of build_u1_cycle.
Circuit build_u1_circuit(const FloquetParams1D& params);

// The second chiral-symmetric time frame of the same drive: half of the SOC
// step first, both on-site steps, then the other half of the SOC step:
//   CompositeU(β/4) SOC, CompositeU(α/4) on-site, CompositeU(α/4) on-site,
//   CompositeU(β/4) SOC.
// It is similar to the U1 cycle, so the quasienergy spectra agree.
Circuit build_u1_prime_cycle(const FloquetParams1D& params);
Circuit build_u1_prime_circuit(const FloquetParams1D& params);

// One U2 cycle, open boundaries:
//   CompositeU(π/4) on (Q^U_{x,y}, Q^D_{x,y}) for every site
//   CompositeU(γ/4) on (Q^D_{x,y}, Q^U_{x+1,y}) where x+1 exists
//   CompositeU(δ/2) on (Q^D_{x,y}, Q^U_{x,y+1}) where y+1 exists
Circuit build_u2_cycle(const FloquetParams2D& params);
Circuit build_u2_circuit(const FloquetParams2D& params);

// Applies `cycle` n times.
template <class State>
State run_cycles(const Circuit& cycle, State input, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) apply_circuit(input, cycle);
    return input;
}

}  // namespace topo
