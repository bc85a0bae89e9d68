#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "topocirc/gate.hpp"

namespace topo {

// Dense amplitudes over all 2^Q basis states. Little-endian: qubit q is bit q
// of the basis index, with |g> = 0 and |e> = 1.
class StateVector {
public:
    // |vac> = |gg...g>.
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes);

    // Basis state with exactly one qubit excited.
    static StateVector single_excitation(std::size_t num_qubits, Qubit excited);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    std::span<cplx> amplitudes() noexcept { return amps_; }
    cplx operator[](std::size_t index) const { return amps_[index]; }

    double norm_squared() const noexcept;

    // Raw kernels; no bounds checks beyond asserts. Prefer apply_gate().
    void apply_1q(Qubit q, cplx u00, cplx u01, cplx u10, cplx u11);
    // Real 2x2 (RY) and diagonal (RZ) special cases.
    void apply_real_1q(Qubit q, double u00, double u01, double u10, double u11);
    void apply_diag(Qubit q, cplx d0, cplx d1);
    void apply_cx(Qubit control, Qubit target);
    void apply_x(Qubit q);
    void apply_y(Qubit q);
    void apply_z(Qubit q);

private:
    std::size_t num_qubits_;
    std::vector<cplx> amps_;
};

// Amplitudes of the Hamming-weight-1 sector: entry q is the amplitude of the
// basis state with only qubit q excited.
class SingleExcitationState {
public:
    SingleExcitationState(std::size_t num_qubits, Qubit excited);
    SingleExcitationState(std::size_t num_qubits, std::vector<cplx> amplitudes);

    std::size_t num_qubits() const noexcept { return amps_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    std::span<cplx> amplitudes() noexcept { return amps_; }
    cplx operator[](std::size_t q) const { return amps_[q]; }

    double norm_squared() const noexcept;

    // Restriction of a full state to the weight-1 sector.
    static SingleExcitationState restrict(const StateVector& full);
    // Embedding into the full 2^Q space (Q ≤ 30).
    StateVector embed() const;

private:
    std::vector<cplx> amps_;
};

}  // namespace topo
