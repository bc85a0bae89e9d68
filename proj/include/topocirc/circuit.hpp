#pragma once

#include <cstddef>
#include <vector>

#include "topocirc/gate.hpp"

namespace topo {

using Layer = std::vector<Gate>;

// Ordered gate layers on a fixed register. Layer 0 acts first; gates within a
// layer act on disjoint qubits.
class Circuit {
public:
    explicit Circuit(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Layer>& layers() const noexcept { return layers_; }
    bool empty() const noexcept { return layers_.empty(); }

    // Validates indices and disjointness, then appends. Throws IndexError /
    // InvalidArgument.
    void add_layer(Layer layer);
    // Appends a single gate in its own layer.
    void add_gate(const Gate& gate);
    // Appends every layer of `other` (same register size required).
    void append(const Circuit& other);

    std::size_t gate_count() const noexcept;
    std::size_t count(GateKind kind) const noexcept;
    bool has_macros() const noexcept { return count(GateKind::CompositeU) > 0; }

    // `times` back-to-back copies of this circuit.
    Circuit repeated(std::size_t times) const;

    // Replaces each CompositeU with its canonical eight-gate expansion. A layer
    // of parallel macros becomes eight layers; single-qubit and CNOT gates that
    // share the layer go in the first sub-layer.
    Circuit expanded() const;

private:
    std::size_t num_qubits_;
    std::vector<Layer> layers_;
};

void validate_gate(const Gate& gate, std::size_t num_qubits);

}  // namespace topo
