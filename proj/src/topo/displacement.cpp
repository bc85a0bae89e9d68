#include "topocirc/displacement.hpp"

#include <algorithm>
#include <cmath>

#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"

namespace topo {

namespace {

// Σ_x (x - x0)·|a(Q_{2x})|², 1-based x.
double down_displacement(const SingleExcitationState& s, const LatticeMap1D& map,
                         std::size_t x0) {
    double acc = 0.0;
    for (std::size_t x = 1; x <= map.sites(); ++x) {
        const double w = std::norm(s[map.qubit(x, Spin::Down)]);
        acc += (static_cast<double>(x) - static_cast<double>(x0)) * w;
    }
    return acc;
}

double boundary_amplitude(const SingleExcitationState& s, const LatticeMap1D& map) {
    const std::size_t n = map.sites();
    return std::max({std::abs(s[map.qubit(1, Spin::Up)]), std::abs(s[map.qubit(1, Spin::Down)]),
                     std::abs(s[map.qubit(n, Spin::Up)]), std::abs(s[map.qubit(n, Spin::Down)])});
}

}  // namespace

DisplacementSeries mean_displacement(double alpha, double beta, std::size_t sites,
                                     std::size_t n_max) {
    if (n_max == 0) throw InvalidArgument("n_max must be at least 1");
    if (sites % 2 == 0) throw GuardViolation("mean displacement needs an odd number of sites");
    if (sites < 4 * n_max + 1) {
        throw GuardViolation("chain of " + std::to_string(sites) + " sites is shorter than 4·" +
                             std::to_string(n_max) + "+1");
    }

    const FloquetParams1D params{alpha, beta, sites, 1};
    const LatticeMap1D map(sites);
    const Circuit u1 = build_u1_cycle(params);
    const Circuit u1p = build_u1_prime_cycle(params);

    DisplacementSeries out;
    out.alpha = alpha;
    out.beta = beta;
    out.sites = sites;
    out.n_max = n_max;
    out.center_site = (sites + 1) / 2;
    out.start_qubit = map.qubit(out.center_site, Spin::Up);

    SingleExcitationState a(map.num_qubits(), out.start_qubit);
    SingleExcitationState b = a;
    double sum0 = 0.0, sum_pi = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        apply_circuit(a, u1);
        apply_circuit(b, u1p);
        out.max_boundary_amplitude = std::max(
            {out.max_boundary_amplitude, boundary_amplitude(a, map), boundary_amplitude(b, map)});
        if (out.max_boundary_amplitude > kBoundaryReachTolerance) {
            throw GuardViolation("excitation reached the chain ends after " + std::to_string(n) +
                                 " cycles");
        }
        const double p = down_displacement(a, map, out.center_site);
        const double pp = down_displacement(b, map, out.center_site);
        out.p_bar.push_back(p);
        out.p_bar_prime.push_back(pp);
        out.p0.push_back(-p - pp);
        out.p_pi.push_back(p - pp);
        sum0 += -p - pp;
        sum_pi += p - pp;
        out.running_center0.push_back(sum0 / static_cast<double>(n));
        out.running_center_pi.push_back(sum_pi / static_cast<double>(n));
    }
    out.center0 = out.running_center0.back();
    out.center_pi = out.running_center_pi.back();
    return out;
}

}  // namespace topo
