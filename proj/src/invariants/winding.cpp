#include "topocirc/winding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "topocirc/bloch.hpp"
#include "topocirc/errors.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

bool scalar_at_cut(const Mat2& u, double epsilon) {
    const Mat2 target = std::exp(-I * epsilon) * Mat2::Identity();
    return (u - target).cwiseAbs().maxCoeff() < kBranchCutTolerance;
}

WindingResult finish(Gap gap, double raw, std::size_t k_points, std::size_t t_points,
                     double min_gap) {
    WindingResult r;
    r.epsilon = gap;
    r.raw_integral = raw;
    r.value = static_cast<int>(std::lround(raw));
    r.k_points = k_points;
    r.t_points = t_points;
    r.residual = std::abs(raw - r.value);
    r.min_gap = min_gap;
    r.flagged = r.residual > kWindingFlagThreshold;
    return r;
}

void require_points(std::size_t n, const char* what) {
    if (n < 5) throw InvalidArgument(std::string(what) + " needs at least 5 points");
}

// Fourth-order central difference at index j of a periodic sequence, `at(i)`
// for any i (wrapped by the caller).
template <class At>
Mat2 periodic_derivative(At&& at, std::size_t j, std::size_t n, double h) {
    const auto w = [&](std::size_t off, bool up) { return at(up ? (j + off) % n : (j + n - off) % n); };
    return (8.0 * (w(1, true) - w(1, false)) - (w(2, true) - w(2, false))) / (12 * h);
}

}  // namespace

std::string to_string(Gap g) { return g == Gap::Zero ? "0" : "pi"; }

double min_gap_1d(double alpha, double beta, Gap epsilon, std::size_t k_points) {
    double gap = 2 * kPi;
    for (double k : uniform_k_grid(k_points))
        gap = std::min(gap, gap_distance(bloch_u1(k, alpha, beta), gap_energy(epsilon)));
    return gap;
}

double min_gap_2d(double gamma, double delta, Gap epsilon, std::size_t k_points) {
    double gap = 2 * kPi;
    const auto ks = uniform_k_grid(k_points);
    for (double ky : ks)
        for (double kx : ks)
            gap = std::min(gap, gap_distance(bloch_u2(kx, ky, gamma, delta), gap_energy(epsilon)));
    return gap;
}

WindingResult winding_1d(double alpha, double beta, Gap epsilon, std::size_t k_points) {
    require_points(k_points, "winding_1d");
    const double eps = gap_energy(epsilon);
    const auto ks = uniform_k_grid(k_points);
    const double dk = 2 * kPi / static_cast<double>(k_points);

    std::vector<Mat2> full(k_points);
    bool all_scalar = true;
    double min_gap = 2 * kPi;
    for (std::size_t j = 0; j < k_points; ++j) {
        full[j] = bloch_u1(ks[j], alpha, beta);
        all_scalar = all_scalar && scalar_at_cut(full[j], eps);
        min_gap = std::min(min_gap, gap_distance(full[j], eps));
    }
    // A cycle equal to e^{-iε}·1 at every k has a scalar periodized operator
    // whatever branch is picked, and winds zero times.
    if (all_scalar) return finish(epsilon, 0.0, k_points, 0, 0.0);

    std::vector<Mat2> periodized(k_points);
    for (std::size_t j = 0; j < k_points; ++j) {
        const Mat2 h = branch_log_hamiltonian(full[j], eps);
        periodized[j] = bloch_u1(ks[j], alpha, beta, 0.5) * expm_plus_i(h, 0.5);
    }

    Mat2 tau_z = Mat2::Zero();
    tau_z(0, 0) = 1.0;
    tau_z(1, 1) = -1.0;
    cplx acc = 0.0;
    const auto at = [&](std::size_t i) -> const Mat2& { return periodized[i]; };
    for (std::size_t j = 0; j < k_points; ++j) {
        const Mat2 dU = periodic_derivative(at, j, k_points, dk);
        acc += (tau_z * periodized[j].adjoint() * dU).trace() * dk;
    }
    const double raw = (I * acc / (4 * kPi)).real();
    const double oriented = epsilon == Gap::Zero ? -raw : raw;
    return finish(epsilon, oriented, k_points, 0, min_gap);
}

WindingResult winding_2d(double gamma, double delta, Gap epsilon, std::size_t k_points,
                         std::size_t t_points) {
    require_points(k_points, "winding_2d");
    if (t_points == 0) throw InvalidArgument("winding_2d needs t_points > 0");
    const double eps = gap_energy(epsilon);
    const auto ks = uniform_k_grid(k_points);
    const double dk = 2 * kPi / static_cast<double>(k_points);

    const std::size_t nk = k_points;
    const std::size_t segments = 3;
    const std::size_t per_segment = (t_points + segments - 1) / segments;
    const std::size_t nt = per_segment * segments;
    const double dt = 1.0 / static_cast<double>(nt);

    std::vector<PiecewiseCycle> cycles(nk * nk);
    std::vector<Mat2> heff(nk * nk);
    bool all_scalar = true;
    double min_gap = 2 * kPi;
    for (std::size_t iy = 0; iy < nk; ++iy) {
        for (std::size_t ix = 0; ix < nk; ++ix) {
            auto& c = cycles[iy * nk + ix];
            c = bloch_cycle_2d(ks[ix], ks[iy], gamma, delta);
            const Mat2 u = c.evolve(1.0);
            all_scalar = all_scalar && scalar_at_cut(u, eps);
            min_gap = std::min(min_gap, gap_distance(u, eps));
        }
    }
    if (all_scalar) return finish(epsilon, 0.0, k_points, nt, 0.0);
    for (std::size_t i = 0; i < nk * nk; ++i)
        heff[i] = branch_log_hamiltonian(cycles[i].evolve(1.0), eps);

    // One time slice at a time; k-derivatives only need neighbours in k.
    std::vector<Mat2> slice(nk * nk);
    cplx acc = 0.0;
    for (std::size_t it = 0; it < nt; ++it) {
        const double t = (static_cast<double>(it) + 0.5) * dt;
        const std::size_t seg = it / per_segment;
        for (std::size_t i = 0; i < nk * nk; ++i)
            slice[i] = cycles[i].evolve(t) * expm_plus_i(heff[i], t);
        for (std::size_t iy = 0; iy < nk; ++iy) {
            for (std::size_t ix = 0; ix < nk; ++ix) {
                const std::size_t i = iy * nk + ix;
                const Mat2& u = slice[i];
                const Mat2 ud = u.adjoint();
                const auto row = [&](std::size_t jx) -> const Mat2& { return slice[iy * nk + jx]; };
                const auto col = [&](std::size_t jy) -> const Mat2& { return slice[jy * nk + ix]; };
                const Mat2 ax = ud * periodic_derivative(row, ix, nk, dk);
                const Mat2 ay = ud * periodic_derivative(col, iy, nk, dk);
                // U_ε⁻¹∂tU_ε = -i·S·U_ε†·G·U_ε + i·H_ε
                const Mat2 at = -I * static_cast<double>(segments) * ud *
                                    cycles[i].generators[seg] * u +
                                I * heff[i];
                acc += (at * (ax * ay - ay * ax)).trace();
            }
        }
    }
    const double raw = (acc * dk * dk * dt / (8 * kPi * kPi)).real();
    return finish(epsilon, raw, k_points, nt, min_gap);
}

}  // namespace topo
