#include "topocirc/floquet.hpp"

#include <cmath>

#include "topocirc/errors.hpp"

namespace topo {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

Layer onsite_layer_1d(const LatticeMap1D& map, double theta) {
    Layer l;
    for (std::size_t x = 1; x <= map.sites(); ++x)
        l.push_back(composite_u(theta, map.qubit(x, Spin::Up), map.qubit(x, Spin::Down)));
    return l;
}

Layer soc_layer_1d(const LatticeMap1D& map, double theta) {
    Layer l;
    for (std::size_t x = 1; x < map.sites(); ++x)
        l.push_back(composite_u(theta, map.qubit(x, Spin::Down), map.qubit(x + 1, Spin::Up)));
    return l;
}

}  // namespace

void FloquetParams1D::validate() const {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    if (sites < 2) throw InvalidArgument("1D chain needs at least 2 sites");
}

void FloquetParams2D::validate() const {
    require_finite(gamma, "gamma");
    require_finite(delta, "delta");
    if (nx < 2 || ny < 2) throw InvalidArgument("2D lattice needs at least 2x2 sites");
}

Circuit build_u1_cycle(const FloquetParams1D& params) {
    params.validate();
    const LatticeMap1D map(params.sites);
    Circuit c(map.num_qubits());
    c.add_layer(onsite_layer_1d(map, onsite_angle_1d(params.alpha)));
    c.add_layer(soc_layer_1d(map, soc_angle_1d(params.beta)));
    c.add_layer(onsite_layer_1d(map, onsite_angle_1d(params.alpha)));
    return c;
}

Circuit build_u1_circuit(const FloquetParams1D& params) {
    return build_u1_cycle(params).repeated(params.cycles);
}

Circuit build_u1_prime_cycle(const FloquetParams1D& params) {
    params.validate();
    const LatticeMap1D map(params.sites);
    const double half_soc = soc_angle_1d(params.beta) / 2;
    Circuit c(map.num_qubits());
    c.add_layer(soc_layer_1d(map, half_soc));
    c.add_layer(onsite_layer_1d(map, onsite_angle_1d(params.alpha)));
    c.add_layer(onsite_layer_1d(map, onsite_angle_1d(params.alpha)));
    c.add_layer(soc_layer_1d(map, half_soc));
    return c;
}

Circuit build_u1_prime_circuit(const FloquetParams1D& params) {
    return build_u1_prime_cycle(params).repeated(params.cycles);
}

Circuit build_u2_cycle(const FloquetParams2D& params) {
    params.validate();
    const LatticeMap2D map(params.nx, params.ny);
    Circuit c(map.num_qubits());

    Layer onsite, sx, sy;
    for (std::size_t y = 1; y <= map.ny(); ++y) {
        for (std::size_t x = 1; x <= map.nx(); ++x) {
            const Qubit down = map.qubit(x, y, Spin::Down);
            onsite.push_back(composite_u(onsite_angle_2d(), map.qubit(x, y, Spin::Up), down));
            if (x < map.nx())
                sx.push_back(composite_u(soc_x_angle_2d(params.gamma), down,
                                         map.qubit(x + 1, y, Spin::Up)));
            if (y < map.ny())
                sy.push_back(composite_u(soc_y_angle_2d(params.delta), down,
                                         map.qubit(x, y + 1, Spin::Up)));
        }
    }
    c.add_layer(std::move(onsite));
    c.add_layer(std::move(sx));
    c.add_layer(std::move(sy));
    return c;
}

Circuit build_u2_circuit(const FloquetParams2D& params) {
    return build_u2_cycle(params).repeated(params.cycles);
}

}  // namespace topo
