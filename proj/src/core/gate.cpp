#include "topocirc/gate.hpp"

#include <cstdio>

namespace topo {

Gate ry(double theta, Qubit q) { return {GateKind::RY, q, 0, theta}; }
Gate rz(double phi, Qubit q) { return {GateKind::RZ, q, 0, phi}; }
Gate cnot(Qubit control, Qubit target) { return {GateKind::CNOT, control, target, 0.0}; }
Gate composite_u(double theta, Qubit qa, Qubit qb) {
    return {GateKind::CompositeU, qa, qb, theta};
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CompositeU: return "CompositeU";
    }
    return "?";
}

std::string to_string(const Gate& gate) {
    char buf[96];
    switch (gate.kind) {
        case GateKind::RY:
        case GateKind::RZ:
            std::snprintf(buf, sizeof buf, "%s(%.17g, %zu)", to_string(gate.kind).c_str(),
                          gate.angle, gate.q0);
            break;
        case GateKind::CNOT:
            std::snprintf(buf, sizeof buf, "CNOT(%zu, %zu)", gate.q0, gate.q1);
            break;
        case GateKind::CompositeU:
            std::snprintf(buf, sizeof buf, "CompositeU(%.17g, %zu, %zu)", gate.angle, gate.q0,
                          gate.q1);
            break;
    }
    return buf;
}

}  // namespace topo
