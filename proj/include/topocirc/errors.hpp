#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topo {

// Base for all library errors. `kind()` is a stable machine-readable tag used
// by the CLI error record.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct IndexError : Error {
    explicit IndexError(const std::string& what) : Error("index_out_of_range", what) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

// A gate that leaves the single-excitation subspace was handed to the subspace engine.
struct NonConservingGate : Error {
    explicit NonConservingGate(const std::string& what) : Error("non_conserving_gate", what) {}
};

struct GapClosed : Error {
    explicit GapClosed(const std::string& what) : Error("gap_closed", what) {}
};

struct SingularAngle : Error {
    explicit SingularAngle(const std::string& what) : Error("singular_angle", what) {}
};

struct NoEdgeState : Error {
    explicit NoEdgeState(const std::string& what) : Error("edge_state_absent", what) {}
};

// Numerical guard violations (boundary reach, qubit-count limits, ...).
struct GuardViolation : Error {
    explicit GuardViolation(const std::string& what) : Error("guard_violation", what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what) : Error("singular_matrix", what) {}
};

struct UnexpandedMacro : Error {
    explicit UnexpandedMacro(const std::string& what) : Error("unexpanded_macro", what) {}
};

class ParseError : public Error {
public:
    ParseError(std::string kind, const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::move(kind), "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace topo
