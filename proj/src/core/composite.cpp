#include "topocirc/composite.hpp"

#include <cmath>

#include "topocirc/errors.hpp"

namespace topo {

namespace {
const cplx I{0.0, 1.0};
}

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

Mat2 rz_matrix(double phi) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::exp(-I * (phi / 2));
    m(1, 1) = std::exp(I * (phi / 2));
    return m;
}

Mat4 embed_single(const Mat2& m, bool on_a) {
    Mat4 out = Mat4::Zero();
    // index = 2·a + b
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    cplx v = on_a ? (b == b2 ? m(a, a2) : 0.0) : (a == a2 ? m(b, b2) : 0.0);
                    out(2 * a + b, 2 * a2 + b2) = v;
                }
    return out;
}

Mat4 cnot_matrix(bool a_controls) {
    Mat4 out = Mat4::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            int a2 = a, b2 = b;
            if (a_controls && a == 1) b2 ^= 1;
            if (!a_controls && b == 1) a2 ^= 1;
            out(2 * a2 + b2, 2 * a + b) = 1.0;
        }
    return out;
}

std::array<Gate, 8> expand_composite_u(double theta, Qubit qa, Qubit qb) {
    if (qa == qb) throw InvalidArgument("CompositeU needs two distinct qubits");
    return {cnot(qa, qb),       rz(kCompositeZAngle, qa), ry(-theta, qa),
            cnot(qb, qa),       ry(theta, qa),            cnot(qb, qa),
            rz(-kCompositeZAngle, qa), cnot(qa, qb)};
}

Mat4 composite_u_matrix(double theta) {
    // Qubit labels 0 and 1 stand for (qa, qb).
    Mat4 total = Mat4::Identity();
    for (const Gate& g : expand_composite_u(theta, 0, 1)) {
        Mat4 m;
        switch (g.kind) {
            case GateKind::RY: m = embed_single(ry_matrix(g.angle), g.q0 == 0); break;
            case GateKind::RZ: m = embed_single(rz_matrix(g.angle), g.q0 == 0); break;
            case GateKind::CNOT: m = cnot_matrix(g.q0 == 0); break;
            case GateKind::CompositeU: break;
        }
        total = m * total;
    }
    return total;
}

Mat4 composite_u_target(double theta) {
    Mat4 m = Mat4::Identity();
    const double c = std::cos(theta), s = std::sin(theta);
    m(1, 1) = c;
    m(2, 2) = c;
    m(1, 2) = -I * s;
    m(2, 1) = -I * s;
    return m;
}

}  // namespace topo
