#pragma once

#include <cstddef>

#include "topocirc/state.hpp"
#include "topocirc/winding.hpp"

namespace topo {

// Left-boundary edge states of the open U1 chain:
//   |ψ0_L> ∝ Σ_x λ1^{x-1} |e>_{Q_{2x-1}},   λ1 = -tan(α/4)·cot(β/4)
//   |ψπ_L> ∝ Σ_x λ2^{x-1} |e>_{Q_{2x}},     λ2 =  cot(α/4)·cot(β/4)
// A state exists (normalizable as N → ∞) when |λ| < 1.
struct EdgeStateAnalytics {
    double lambda1 = 0.0;
    double lambda2_tilde = 0.0;
    bool exists0 = false;
    bool exists_pi = false;

    bool exists(Gap g) const noexcept { return g == Gap::Zero ? exists0 : exists_pi; }
    double decay(Gap g) const noexcept { return g == Gap::Zero ? lambda1 : lambda2_tilde; }
};

// Throws SingularAngle when α ≡ 0 or 2π (mod 4π) or β ≡ 0 (mod 4π).
EdgeStateAnalytics edge_analytics(double alpha, double beta);

// Normalized analytic edge state on an N-site chain. Throws NoEdgeState when
// it does not exist.
SingleExcitationState edge_state(double alpha, double beta, std::size_t sites, Gap epsilon);

// ‖U1|ψ> - e^{-iε}|ψ>‖ for one cycle on the open N-site chain.
double edge_eigenstate_check(double alpha, double beta, std::size_t sites, Gap epsilon);

}  // namespace topo
