#pragma once

#include <array>

#include <Eigen/Dense>

#include "topocirc/gate.hpp"

namespace topo {

// Two-qubit matrices in this header use the basis order {gg, ge, eg, ee} of
// |q_a q_b>, i.e. row index = 2·bit(q_a) + bit(q_b).
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Angle of the fixed Z± rotations in the composite gate: Z± = RZ(±3π/2).
inline constexpr double kCompositeZAngle = 1.5 * 3.14159265358979323846;

Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double phi);

// Embeds a single-qubit matrix acting on the first (`on_a`) or second qubit.
Mat4 embed_single(const Mat2& m, bool on_a);
// CNOT with control a, target b (`a_controls`) or control b, target a.
Mat4 cnot_matrix(bool a_controls);

// Canonical eight-gate expansion of CompositeU(θ) on (qa, qb), in time order:
//   CNOT(qa→qb), RZ(+3π/2, qa), RY(-θ, qa), CNOT(qb→qa),
//   RY(+θ, qa), CNOT(qb→qa), RZ(-3π/2, qa), CNOT(qa→qb)
// Throws InvalidArgument when qa == qb.
std::array<Gate, 8> expand_composite_u(double theta, Qubit qa, Qubit qb);

// Exact product of the eight expansion matrices (later gates multiply on the left).
Mat4 composite_u_matrix(double theta);

// Target form: cosθ on the diagonal of {ge, eg}, -i sinθ off it, identity on {gg, ee}.
Mat4 composite_u_target(double theta);

}  // namespace topo
