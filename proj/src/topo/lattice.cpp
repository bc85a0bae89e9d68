#include "topocirc/lattice.hpp"

#include "topocirc/errors.hpp"

namespace topo {

LatticeMap1D::LatticeMap1D(std::size_t sites) : sites_(sites) {
    if (sites == 0) throw InvalidArgument("lattice needs at least one site");
}

Qubit LatticeMap1D::qubit(std::size_t x, Spin spin) const {
    if (x < 1 || x > sites_) throw IndexError("site " + std::to_string(x) + " outside 1.." +
                                              std::to_string(sites_));
    return 2 * x - (spin == Spin::Up ? 2 : 1);
}

Site1D LatticeMap1D::site(Qubit q) const {
    if (q >= num_qubits()) throw IndexError("qubit " + std::to_string(q) + " outside lattice");
    return {q / 2 + 1, q % 2 == 0 ? Spin::Up : Spin::Down};
}

LatticeMap2D::LatticeMap2D(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
    if (nx == 0 || ny == 0) throw InvalidArgument("lattice needs at least one site");
}

Qubit LatticeMap2D::qubit(std::size_t x, std::size_t y, Spin spin) const {
    if (x < 1 || x > nx_ || y < 1 || y > ny_) {
        throw IndexError("site (" + std::to_string(x) + "," + std::to_string(y) +
                         ") outside lattice");
    }
    return 2 * ((y - 1) * nx_ + (x - 1)) + (spin == Spin::Up ? 0 : 1);
}

Site2D LatticeMap2D::site(Qubit q) const {
    if (q >= num_qubits()) throw IndexError("qubit " + std::to_string(q) + " outside lattice");
    const std::size_t cell = q / 2;
    return {cell % nx_ + 1, cell / nx_ + 1, q % 2 == 0 ? Spin::Up : Spin::Down};
}

bool LatticeMap2D::on_boundary(std::size_t x, std::size_t y) const noexcept {
    return x == 1 || y == 1 || x == nx_ || y == ny_;
}

}  // namespace topo
