#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace topo {

enum class DiagramKind { OneD, TwoD };

struct PhaseCell {
    double a = 0.0;  // α (1D) or γ (2D)
    double b = 0.0;  // β (1D) or δ (2D)
    std::optional<int> zero;  // ν0 / W0; empty when undefined
    std::optional<int> pi;    // νπ / Wπ
    double residual0 = 0.0;
    double residual_pi = 0.0;
    std::string note;  // reason a value is undefined
};

struct PhaseDiagram {
    DiagramKind kind = DiagramKind::OneD;
    std::vector<double> axis_a;
    std::vector<double> axis_b;
    std::size_t k_points = 0;
    std::size_t t_points = 0;
    // Row-major: cell (i, j) at index j·axis_a.size() + i.
    std::vector<PhaseCell> cells;

    const PhaseCell& at(std::size_t i, std::size_t j) const {
        return cells[j * axis_a.size() + i];
    }
};

// Cells whose quasienergy gap at ε is below this are reported undefined.
inline constexpr double kGapClosingThreshold = 1e-6;

// Evaluates every cell on `threads` workers (0 = hardware concurrency). Cells
// are independent, so the result does not depend on the thread count.
PhaseDiagram phase_diagram(DiagramKind kind, const std::vector<double>& axis_a,
                           const std::vector<double>& axis_b, std::size_t k_points,
                           std::size_t t_points = 0, std::size_t threads = 1);

// n cell-centred points over (lo, hi).
std::vector<double> centered_axis(double lo, double hi, std::size_t n);

}  // namespace topo
