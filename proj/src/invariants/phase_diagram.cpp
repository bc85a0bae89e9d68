#include "topocirc/phase_diagram.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "topocirc/errors.hpp"
#include "topocirc/winding.hpp"

namespace topo {

namespace {

void fill_cell(PhaseCell& cell, DiagramKind kind, std::size_t k_points, std::size_t t_points) {
    for (Gap gap : {Gap::Zero, Gap::Pi}) {
        std::optional<int>& slot = gap == Gap::Zero ? cell.zero : cell.pi;
        double& residual = gap == Gap::Zero ? cell.residual0 : cell.residual_pi;
        try {
            WindingResult r = kind == DiagramKind::OneD
                                  ? winding_1d(cell.a, cell.b, gap, k_points)
                                  : winding_2d(cell.a, cell.b, gap, k_points, t_points);
            residual = r.residual;
            // min_gap is 0 only for the exactly scalar cycle, which is well defined.
            const bool scalar = r.min_gap == 0.0 && r.raw_integral == 0.0;
            if (!scalar && r.min_gap < kGapClosingThreshold) {
                cell.note += "gap " + to_string(gap) + " closed; ";
            } else if (r.flagged) {
                cell.note += "gap " + to_string(gap) + " residual too large; ";
            } else {
                slot = r.value;
            }
        } catch (const GapClosed&) {
            cell.note += "gap " + to_string(gap) + " closed; ";
        }
    }
}

}  // namespace

std::vector<double> centered_axis(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return v;
}

PhaseDiagram phase_diagram(DiagramKind kind, const std::vector<double>& axis_a,
                           const std::vector<double>& axis_b, std::size_t k_points,
                           std::size_t t_points, std::size_t threads) {
    if (axis_a.empty() || axis_b.empty()) throw InvalidArgument("phase diagram axes are empty");
    if (kind == DiagramKind::TwoD && t_points == 0) t_points = kDefaultTPoints2D;

    PhaseDiagram d;
    d.kind = kind;
    d.axis_a = axis_a;
    d.axis_b = axis_b;
    d.k_points = k_points;
    d.t_points = kind == DiagramKind::TwoD ? t_points : 0;
    d.cells.resize(axis_a.size() * axis_b.size());
    for (std::size_t j = 0; j < axis_b.size(); ++j)
        for (std::size_t i = 0; i < axis_a.size(); ++i) {
            PhaseCell& c = d.cells[j * axis_a.size() + i];
            c.a = axis_a[i];
            c.b = axis_b[j];
        }

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < d.cells.size(); i = next++)
            fill_cell(d.cells[i], kind, k_points, t_points);
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return d;
}

}  // namespace topo
