#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace topo {

using cplx = std::complex<double>;
using Qubit = std::size_t;

enum class GateKind { RY, RZ, CNOT, CompositeU };

// One gate of the {RY, RZ, CNOT, CompositeU} set.
//
//   RY(θ, q)         = exp(-i θ/2 σy) on q
//   RZ(φ, q)         = exp(-i φ/2 σz) = diag(e^{-iφ/2}, e^{+iφ/2}) on q
//   CNOT(c, t)       control c, target t
//   CompositeU(θ,a,b) acts as cosθ·1 - i sinθ·X on the single-excitation pair
//                     {|ge>, |eg>} of (a, b) and as identity on {|gg>, |ee>}.
//
// For single-qubit gates `q1` is unused.
struct Gate {
    GateKind kind;
    Qubit q0;
    Qubit q1;
    double angle;

    bool is_two_qubit() const noexcept {
        return kind == GateKind::CNOT || kind == GateKind::CompositeU;
    }
    bool touches(Qubit q) const noexcept { return q == q0 || (is_two_qubit() && q == q1); }

    friend bool operator==(const Gate&, const Gate&) = default;
};

Gate ry(double theta, Qubit q);
Gate rz(double phi, Qubit q);
Gate cnot(Qubit control, Qubit target);
Gate composite_u(double theta, Qubit qa, Qubit qb);

std::string to_string(GateKind kind);
std::string to_string(const Gate& gate);

}  // namespace topo
