#pragma once

#include <cstddef>

#include "topocirc/gate.hpp"

namespace topo {

enum class Spin { Up, Down };

struct Site1D {
    std::size_t x;  // 1-based
    Spin spin;
    friend bool operator==(const Site1D&, const Site1D&) = default;
};

struct Site2D {
    std::size_t x;  // 1-based
    std::size_t y;  // 1-based
    Spin spin;
    friend bool operator==(const Site2D&, const Site2D&) = default;
};

// Chain of N spinful sites on 2N qubits: (x, up) -> Q_{2x-1}, (x, down) -> Q_{2x}
// in 1-based qubit labels, i.e. 0-based qubits 2x-2 and 2x-1.
class LatticeMap1D {
public:
    explicit LatticeMap1D(std::size_t sites);

    std::size_t sites() const noexcept { return sites_; }
    std::size_t num_qubits() const noexcept { return 2 * sites_; }

    Qubit qubit(std::size_t x, Spin spin) const;
    Qubit qubit(const Site1D& s) const { return qubit(s.x, s.spin); }
    Site1D site(Qubit q) const;

private:
    std::size_t sites_;
};

// Nx × Ny lattice; site (x, y) owns qubits Q^U_{x,y}, Q^D_{x,y}. Sites are
// numbered row-major with x fastest, so Q^U_{x,y} = 2·((y-1)·Nx + x-1).
class LatticeMap2D {
public:
    LatticeMap2D(std::size_t nx, std::size_t ny);

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t num_qubits() const noexcept { return 2 * nx_ * ny_; }

    Qubit qubit(std::size_t x, std::size_t y, Spin spin) const;
    Qubit qubit(const Site2D& s) const { return qubit(s.x, s.y, s.spin); }
    Site2D site(Qubit q) const;
    bool on_boundary(std::size_t x, std::size_t y) const noexcept;

private:
    std::size_t nx_;
    std::size_t ny_;
};

}  // namespace topo
