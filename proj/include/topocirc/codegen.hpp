#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "topocirc/circuit.hpp"

namespace topo {

enum class Dialect { QASM2, Quil };

std::string to_string(Dialect d);
Dialect parse_dialect(std::string_view name);  // "qasm2" | "quil"

struct EmittedProgram {
    Dialect dialect = Dialect::QASM2;
    std::string text;
    std::size_t gate_count = 0;
    std::size_t qubit_count = 0;
};

// Emits one statement per elementary gate followed by a measurement of every
// qubit. Angles are printed with 17 significant digits; lines end in LF.
// Throws UnexpandedMacro if the circuit still holds CompositeU gates.
EmittedProgram emit(const Circuit& circuit, Dialect dialect);

// Reads the subset emit() produces: the OPENQASM/include header, one qreg,
// creg declarations, ry/rz/cx and measure statements, `//` comments. Gates are
// packed into layers as early as their qubits allow. Throws ParseError with
// line/column on anything else.
Circuit parse_qasm(std::string_view text);

}  // namespace topo
