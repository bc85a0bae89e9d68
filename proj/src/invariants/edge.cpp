#include "topocirc/edge.hpp"

#include <cmath>
#include <numbers>

#include "topocirc/engine.hpp"
#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"

namespace topo {

namespace {
constexpr double kSingularTolerance = 1e-12;
constexpr double kMarginalTolerance = 1e-12;
}  // namespace

EdgeStateAnalytics edge_analytics(double alpha, double beta) {
    const double sa = std::sin(alpha / 4), ca = std::cos(alpha / 4);
    const double sb = std::sin(beta / 4), cb = std::cos(beta / 4);
    if (std::abs(sa) < kSingularTolerance) throw SingularAngle("cot(α/4) diverges: α ≡ 0 mod 4π");
    if (std::abs(ca) < kSingularTolerance) throw SingularAngle("tan(α/4) diverges: α ≡ 2π mod 4π");
    if (std::abs(sb) < kSingularTolerance) throw SingularAngle("cot(β/4) diverges: β ≡ 0 mod 4π");

    EdgeStateAnalytics out;
    out.lambda1 = -(sa / ca) * (cb / sb);
    out.lambda2_tilde = (ca / sa) * (cb / sb);
    out.exists0 = std::abs(out.lambda1) < 1.0 - kMarginalTolerance;
    out.exists_pi = std::abs(out.lambda2_tilde) < 1.0 - kMarginalTolerance;
    return out;
}

SingleExcitationState edge_state(double alpha, double beta, std::size_t sites, Gap epsilon) {
    const EdgeStateAnalytics a = edge_analytics(alpha, beta);
    if (!a.exists(epsilon)) {
        throw NoEdgeState("no left edge state at ε = " + to_string(epsilon) +
                          " (|λ| = " + std::to_string(std::abs(a.decay(epsilon))) + ")");
    }
    const LatticeMap1D map(sites);
    const Spin spin = epsilon == Gap::Zero ? Spin::Up : Spin::Down;
    std::vector<cplx> amps(map.num_qubits(), cplx{0.0, 0.0});
    double power = 1.0, norm = 0.0;
    for (std::size_t x = 1; x <= sites; ++x) {
        amps[map.qubit(x, spin)] = power;
        norm += power * power;
        power *= a.decay(epsilon);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (cplx& v : amps) v *= scale;
    return SingleExcitationState(map.num_qubits(), std::move(amps));
}

double edge_eigenstate_check(double alpha, double beta, std::size_t sites, Gap epsilon) {
    const SingleExcitationState psi = edge_state(alpha, beta, sites, epsilon);
    SingleExcitationState out = psi;
    apply_circuit(out, build_u1_cycle({alpha, beta, sites, 1}));
    const cplx phase = std::exp(cplx{0.0, -gap_energy(epsilon)});
    double r = 0.0;
    for (std::size_t q = 0; q < psi.num_qubits(); ++q) r += std::norm(out[q] - phase * psi[q]);
    return std::sqrt(r);
}

}  // namespace topo
