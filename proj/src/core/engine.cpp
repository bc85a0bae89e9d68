#include "topocirc/engine.hpp"

#include <cmath>

#include "topocirc/composite.hpp"
#include "topocirc/errors.hpp"

namespace topo {

namespace {

const cplx I{0.0, 1.0};

void apply_elementary(StateVector& state, const Gate& gate) {
    switch (gate.kind) {
        case GateKind::RY: {
            const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
            state.apply_real_1q(gate.q0, c, -s, s, c);
            break;
        }
        case GateKind::RZ:
            state.apply_diag(gate.q0, std::exp(-I * (gate.angle / 2)), std::exp(I * (gate.angle / 2)));
            break;
        case GateKind::CNOT: state.apply_cx(gate.q0, gate.q1); break;
        case GateKind::CompositeU: break;
    }
}

// The weight-1 block of CompositeU on amplitudes (qa, qb).
inline void rotate_pair(std::span<cplx> amps, Qubit qa, Qubit qb, double c, double s) {
    const cplx a = amps[qa], b = amps[qb];
    amps[qa] = c * a - I * s * b;
    amps[qb] = -I * s * a + c * b;
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    if (gate.kind == GateKind::CompositeU) {
        for (const Gate& g : expand_composite_u(gate.angle, gate.q0, gate.q1)) {
            apply_elementary(state, g);
        }
    } else {
        apply_elementary(state, gate);
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw InvalidArgument("circuit and state register sizes differ");
    }
    for (const Layer& layer : circuit.layers())
        for (const Gate& g : layer) apply_gate(state, g);
}

void apply_gate(SingleExcitationState& state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    auto amps = state.amplitudes();
    switch (gate.kind) {
        case GateKind::CompositeU:
            rotate_pair(amps, gate.q0, gate.q1, std::cos(gate.angle), std::sin(gate.angle));
            break;
        case GateKind::RZ: {
            // Every weight-1 basis state has q0 in |g> except the one exciting q0.
            const cplx ground = std::exp(-I * (gate.angle / 2));
            for (cplx& a : amps) a *= ground;
            amps[gate.q0] *= std::exp(I * gate.angle);
            break;
        }
        case GateKind::RY:
        case GateKind::CNOT:
            throw NonConservingGate(to_string(gate) +
                                    " does not conserve excitation number on its own");
    }
}

void apply_circuit(SingleExcitationState& state, const Circuit& circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw InvalidArgument("circuit and state register sizes differ");
    }
    for (const Layer& layer : circuit.layers())
        for (const Gate& g : layer) apply_gate(state, g);
}

Eigen::MatrixXcd compile_single_excitation(const Circuit& circuit) {
    const auto n = static_cast<Eigen::Index>(circuit.num_qubits());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (const Layer& layer : circuit.layers()) {
        for (const Gate& g : layer) {
            validate_gate(g, circuit.num_qubits());
            const auto a = static_cast<Eigen::Index>(g.q0);
            switch (g.kind) {
                case GateKind::CompositeU: {
                    const auto b = static_cast<Eigen::Index>(g.q1);
                    const double c = std::cos(g.angle), s = std::sin(g.angle);
                    // Left-multiply by the 2x2 block: only rows a and b change.
                    Eigen::RowVectorXcd ra = u.row(a), rb = u.row(b);
                    u.row(a) = c * ra - I * s * rb;
                    u.row(b) = -I * s * ra + c * rb;
                    break;
                }
                case GateKind::RZ:
                    u *= std::exp(-I * (g.angle / 2));
                    u.row(a) *= std::exp(I * g.angle);
                    break;
                case GateKind::RY:
                case GateKind::CNOT:
                    throw NonConservingGate(to_string(g) +
                                            " does not conserve excitation number on its own");
            }
        }
    }
    return u;
}

std::vector<double> excitation_distribution(const StateVector& state) {
    std::vector<double> p(state.num_qubits(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double w = std::norm(amps[i]);
        if (w == 0.0) continue;
        for (std::size_t q = 0; q < p.size(); ++q)
            if (i >> q & 1U) p[q] += w;
    }
    return p;
}

std::vector<double> excitation_distribution(const SingleExcitationState& state) {
    std::vector<double> p;
    p.reserve(state.num_qubits());
    for (const cplx& a : state.amplitudes()) p.push_back(std::norm(a));
    return p;
}

}  // namespace topo
