#include "topocirc/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

// σ-vector components of a 2x2 matrix: m = c0·1 + c·σ.
struct PauliComponents {
    cplx c0, cx, cy, cz;
};

PauliComponents pauli_components(const Mat2& m) {
    return {(m(0, 0) + m(1, 1)) / 2.0, (m(0, 1) + m(1, 0)) / 2.0,
            (m(1, 0) - m(0, 1)) / (2.0 * I), (m(0, 0) - m(1, 1)) / 2.0};
}

Mat2 from_axis(double c, double s, double nx, double ny, double nz) {
    // c·1 - i·s·(n·σ)
    Mat2 m;
    m << c - I * s * nz, -I * s * cplx(nx, -ny), -I * s * cplx(nx, ny), c + I * s * nz;
    return m;
}

// U = e^{iφ}(cosθ - i sinθ n·σ), θ ∈ [0, π].
struct UnitaryForm {
    double phase;
    double theta;
    double nx, ny, nz;
};

UnitaryForm decompose(const Mat2& u) {
    const double phase = std::arg(u.determinant()) / 2;
    const Mat2 v = u * std::exp(-I * phase);
    const auto pc = pauli_components(v);
    // v = c0 - i s·n·σ, so s·n = i·(cx, cy, cz).
    const double sx = (I * pc.cx).real(), sy = (I * pc.cy).real(), sz = (I * pc.cz).real();
    const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
    const double theta = std::atan2(s, pc.c0.real());
    if (s < 1e-300) return {phase, theta, 0.0, 0.0, 1.0};
    return {phase, theta, sx / s, sy / s, sz / s};
}

// Wraps into (-π, π].
double wrap_pi(double x) {
    double y = std::remainder(x, 2 * kPi);
    if (y <= -kPi) y += 2 * kPi;
    return y;
}

}  // namespace

Mat2 expm_i_hermitian(const Mat2& g) {
    const auto pc = pauli_components(g);
    const double g0 = pc.c0.real();
    const double gx = pc.cx.real(), gy = pc.cy.real(), gz = pc.cz.real();
    const double r = std::sqrt(gx * gx + gy * gy + gz * gz);
    const cplx global = std::exp(-I * g0);
    if (r < 1e-300) return global * Mat2::Identity();
    return global * from_axis(std::cos(r), std::sin(r), gx / r, gy / r, gz / r);
}

Mat2 expm_plus_i(const Mat2& h, double t) { return expm_i_hermitian(-t * h); }

Mat2 PiecewiseCycle::evolve(double t) const {
    const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(segments());
    Mat2 u = Mat2::Identity();
    for (std::size_t j = 0; j < segments(); ++j) {
        const double f = std::clamp(s - static_cast<double>(j), 0.0, 1.0);
        if (f <= 0.0) break;
        u = expm_i_hermitian(f * generators[j]) * u;
    }
    return u;
}

std::size_t PiecewiseCycle::segment_at(double t) const {
    const auto s = static_cast<std::size_t>(std::clamp(t, 0.0, 1.0) *
                                            static_cast<double>(segments()));
    return std::min(s, segments() - 1);
}

Mat2 hopping_matrix(double k) {
    Mat2 m;
    m << 0.0, std::exp(-I * k), std::exp(I * k), 0.0;
    return m;
}

PiecewiseCycle bloch_cycle_1d(double k, double alpha, double beta) {
    const Mat2 onsite = onsite_angle_1d(alpha) * pauli_x();
    return {{onsite, soc_angle_1d(beta) * hopping_matrix(k), onsite}};
}

PiecewiseCycle bloch_cycle_2d(double kx, double ky, double gamma, double delta) {
    return {{onsite_angle_2d() * pauli_x(), soc_x_angle_2d(gamma) * hopping_matrix(kx),
             soc_y_angle_2d(delta) * hopping_matrix(ky)}};
}

Mat2 bloch_u1(double k, double alpha, double beta, double t) {
    return bloch_cycle_1d(k, alpha, beta).evolve(t);
}

Mat2 bloch_u2(double kx, double ky, double gamma, double delta, double t) {
    return bloch_cycle_2d(kx, ky, gamma, delta).evolve(t);
}

std::vector<double> uniform_k_grid(std::size_t n) {
    std::vector<double> k(n);
    for (std::size_t j = 0; j < n; ++j)
        k[j] = -kPi + 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
    return k;
}

std::array<double, 2> quasienergies(const Mat2& u) {
    const UnitaryForm f = decompose(u);
    // eigenvalues e^{i(φ ∓ θ)}
    std::array<double, 2> e{wrap_pi(-(f.phase - f.theta)), wrap_pi(-(f.phase + f.theta))};
    std::sort(e.begin(), e.end());
    return e;
}

double gap_distance(const Mat2& u, double epsilon) {
    const auto e = quasienergies(u);
    return std::min(std::abs(wrap_pi(e[0] - epsilon)), std::abs(wrap_pi(e[1] - epsilon)));
}

QuasienergyBands quasienergy_bands(double alpha, double beta, const std::vector<double>& k_grid) {
    QuasienergyBands out;
    out.k = k_grid;
    out.gap0 = 2 * kPi;
    out.gap_pi = 2 * kPi;
    for (double k : k_grid) {
        const Mat2 u = bloch_u1(k, alpha, beta);
        const auto e = quasienergies(u);
        out.lower.push_back(e[0]);
        out.upper.push_back(e[1]);
        out.gap0 = std::min(out.gap0, gap_distance(u, 0.0));
        out.gap_pi = std::min(out.gap_pi, gap_distance(u, kPi));
    }
    return out;
}

Mat2 branch_log_hamiltonian(const Mat2& u, double epsilon) {
    const UnitaryForm f = decompose(u);
    // Quasienergy E of eigenvalue e^{-iE}; P± = (1 ± n·σ)/2 carries e^{i(φ ∓ θ)}.
    auto lift = [&](double e) {
        double d = e - epsilon;
        d -= 2 * kPi * std::ceil(d / (2 * kPi));  // (-2π, 0]
        if (std::abs(d) < kBranchCutTolerance || std::abs(d + 2 * kPi) < kBranchCutTolerance) {
            throw GapClosed("quasienergy at the branch cut ε = " + std::to_string(epsilon));
        }
        return epsilon + d;
    };
    const double e_plus = lift(-(f.phase - f.theta));
    const double e_minus = lift(-(f.phase + f.theta));
    const Mat2 n_sigma = from_axis(0.0, 1.0, f.nx, f.ny, f.nz) * I;  // n·σ
    const Mat2 id = Mat2::Identity();
    return e_plus * (id + n_sigma) / 2.0 + e_minus * (id - n_sigma) / 2.0;
}

}  // namespace topo
