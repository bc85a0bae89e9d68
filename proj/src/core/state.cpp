#include "topocirc/state.hpp"

#include <cassert>
#include <cmath>

#include "topocirc/errors.hpp"

namespace topo {

namespace {
constexpr std::size_t kMaxDenseQubits = 30;

double sum_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& a : v) s += std::norm(a);
    return s;
}
}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxDenseQubits) {
        throw GuardViolation("statevector limited to " + std::to_string(kMaxDenseQubits) +
                             " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits > kMaxDenseQubits || amps_.size() != (std::size_t{1} << num_qubits)) {
        throw InvalidArgument("amplitude count does not match 2^num_qubits");
    }
}

StateVector StateVector::single_excitation(std::size_t num_qubits, Qubit excited) {
    if (excited >= num_qubits) throw IndexError("excited qubit out of range");
    StateVector s(num_qubits);
    s.amps_[0] = 0.0;
    s.amps_[std::size_t{1} << excited] = 1.0;
    return s;
}

double StateVector::norm_squared() const noexcept { return sum_norm(amps_); }

void StateVector::apply_1q(Qubit q, cplx u00, cplx u01, cplx u10, cplx u11) {
    assert(q < num_qubits_);
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; ++i) {
            const cplx a0 = amps_[i];
            const cplx a1 = amps_[i | bit];
            amps_[i] = u00 * a0 + u01 * a1;
            amps_[i | bit] = u10 * a0 + u11 * a1;
        }
    }
}

void StateVector::apply_real_1q(Qubit q, double u00, double u01, double u10, double u11) {
    assert(q < num_qubits_);
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; ++i) {
            const cplx a0 = amps_[i];
            const cplx a1 = amps_[i | bit];
            amps_[i] = u00 * a0 + u01 * a1;
            amps_[i | bit] = u10 * a0 + u11 * a1;
        }
    }
}

void StateVector::apply_diag(Qubit q, cplx d0, cplx d1) {
    assert(q < num_qubits_);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? d1 : d0;
}

void StateVector::apply_cx(Qubit control, Qubit target) {
    assert(control < num_qubits_ && target < num_qubits_ && control != target);
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = cbit; i < amps_.size(); i = (i + 1) | cbit) {
        if (!(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
}

void StateVector::apply_x(Qubit q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
    }
}

void StateVector::apply_y(Qubit q) {
    // Y = [[0, -i], [i, 0]]
    const std::size_t bit = std::size_t{1} << q;
    const cplx I{0.0, 1.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) {
            const cplx a0 = amps_[i], a1 = amps_[i | bit];
            amps_[i] = -I * a1;
            amps_[i | bit] = I * a0;
        }
    }
}

void StateVector::apply_z(Qubit q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = bit; i < amps_.size(); i = (i + 1) | bit) amps_[i] = -amps_[i];
}

SingleExcitationState::SingleExcitationState(std::size_t num_qubits, Qubit excited)
    : amps_(num_qubits, cplx{0.0, 0.0}) {
    if (excited >= num_qubits) throw IndexError("excited qubit out of range");
    amps_[excited] = 1.0;
}

SingleExcitationState::SingleExcitationState(std::size_t num_qubits, std::vector<cplx> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.size() != num_qubits) throw InvalidArgument("amplitude count must equal num_qubits");
}

double SingleExcitationState::norm_squared() const noexcept { return sum_norm(amps_); }

SingleExcitationState SingleExcitationState::restrict(const StateVector& full) {
    std::vector<cplx> a(full.num_qubits());
    for (std::size_t q = 0; q < a.size(); ++q) a[q] = full[std::size_t{1} << q];
    const std::size_t n = a.size();
    return SingleExcitationState(n, std::move(a));
}

StateVector SingleExcitationState::embed() const {
    const std::size_t n = amps_.size();
    if (n > kMaxDenseQubits) throw GuardViolation("too many qubits to embed densely");
    std::vector<cplx> full(std::size_t{1} << n, cplx{0.0, 0.0});
    for (std::size_t q = 0; q < n; ++q) full[std::size_t{1} << q] = amps_[q];
    return StateVector(n, std::move(full));
}

}  // namespace topo
