#pragma once

#include <vector>

#include <Eigen/Dense>

#include "topocirc/circuit.hpp"
#include "topocirc/state.hpp"

namespace topo {

// Full statevector engine. CompositeU is applied through its eight-gate
// expansion so this engine never uses the closed-form block.
void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

// Single-excitation engine. Accepts RZ and CompositeU; RY and bare CNOT leave
// the sector and raise NonConservingGate.
void apply_gate(SingleExcitationState& state, const Gate& gate);
void apply_circuit(SingleExcitationState& state, const Circuit& circuit);

// Unitary a conserving circuit induces on the Q-dimensional weight-1 sector.
Eigen::MatrixXcd compile_single_excitation(const Circuit& circuit);

// p[q] = probability that qubit q reads |e>.
std::vector<double> excitation_distribution(const StateVector& state);
std::vector<double> excitation_distribution(const SingleExcitationState& state);

}  // namespace topo
