#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topocirc/circuit.hpp"
#include "topocirc/state.hpp"

namespace topo {

struct ReadoutError {
    double p_e_given_g = 0.0;  // P(read e | prepared g)
    double p_g_given_e = 0.0;  // P(read g | prepared e)
};

// Gate-level depolarizing noise plus classical readout flips.
//
// `readout` is either empty (ideal), a single entry applied to every qubit, or
// one entry per qubit.
struct NoiseModel {
    double p1 = 1e-3;
    double p2 = 1e-2;
    std::vector<ReadoutError> readout{ReadoutError{0.03, 0.03}};
    std::size_t shots = 8192;
    std::uint64_t seed = 1;

    static NoiseModel ideal(std::size_t shots, std::uint64_t seed);

    ReadoutError readout_for(Qubit q) const;
    void validate(std::size_t num_qubits) const;
};

struct MeasurementRecord {
    std::size_t num_qubits = 0;
    std::size_t shots = 0;
    // Bitstring -> count. Bitstrings are written q[Q-1]...q[0] (qubit 0 rightmost).
    std::map<std::string, std::size_t> counts;

    std::vector<double> frequencies() const;
    // Binomial standard error sqrt(f(1-f)/shots) per qubit.
    std::vector<double> standard_errors() const;
};

inline constexpr std::size_t kMaxNoisyQubits = 24;

// Monte-Carlo Pauli trajectories, one per shot. After every elementary gate
// each touched qubit independently receives a uniformly random X, Y or Z with
// probability p1 (single-qubit gates) or p2 (CNOT). The final state is sampled
// once in the computational basis and readout flips are applied per qubit.
//
// Every shot draws from its own stream seeded by (seed, shot index), so the
// record is identical for any `threads` (0 = hardware concurrency).
MeasurementRecord run_noisy(const Circuit& circuit, const StateVector& input,
                            const NoiseModel& model, std::size_t threads = 1);

// Per-qubit inversion of the 2x2 confusion matrix on marginal frequencies,
// clipped to [0, 1]. Throws SingularMatrix when P(e|g) + P(g|e) ≈ 1.
std::vector<double> readout_mitigate(const MeasurementRecord& record, const NoiseModel& model);

std::string bitstring(std::uint64_t outcome, std::size_t num_qubits);

}  // namespace topo
