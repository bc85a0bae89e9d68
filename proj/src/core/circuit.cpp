#include "topocirc/circuit.hpp"

#include <algorithm>

#include "topocirc/composite.hpp"
#include "topocirc/errors.hpp"

namespace topo {

void validate_gate(const Gate& gate, std::size_t num_qubits) {
    if (gate.q0 >= num_qubits || (gate.is_two_qubit() && gate.q1 >= num_qubits)) {
        throw IndexError(to_string(gate) + " out of range for " + std::to_string(num_qubits) +
                         " qubits");
    }
    if (gate.is_two_qubit() && gate.q0 == gate.q1) {
        throw InvalidArgument(to_string(gate) + " acts twice on the same qubit");
    }
}

void Circuit::add_layer(Layer layer) {
    std::vector<bool> used(num_qubits_, false);
    for (const Gate& g : layer) {
        validate_gate(g, num_qubits_);
        auto claim = [&](Qubit q) {
            if (used[q]) {
                throw InvalidArgument("gates in one layer overlap on qubit " + std::to_string(q));
            }
            used[q] = true;
        };
        claim(g.q0);
        if (g.is_two_qubit()) claim(g.q1);
    }
    layers_.push_back(std::move(layer));
}

void Circuit::add_gate(const Gate& gate) { add_layer({gate}); }

void Circuit::append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) {
        throw InvalidArgument("cannot append circuits on different register sizes");
    }
    layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
}

std::size_t Circuit::gate_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.size();
    return n;
}

std::size_t Circuit::count(GateKind kind) const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers_) {
        n += static_cast<std::size_t>(
            std::count_if(l.begin(), l.end(), [kind](const Gate& g) { return g.kind == kind; }));
    }
    return n;
}

Circuit Circuit::repeated(std::size_t times) const {
    Circuit out(num_qubits_);
    out.layers_.reserve(layers_.size() * times);
    for (std::size_t i = 0; i < times; ++i) {
        out.layers_.insert(out.layers_.end(), layers_.begin(), layers_.end());
    }
    return out;
}

Circuit Circuit::expanded() const {
    Circuit out(num_qubits_);
    for (const Layer& layer : layers_) {
        const bool any_macro = std::any_of(layer.begin(), layer.end(), [](const Gate& g) {
            return g.kind == GateKind::CompositeU;
        });
        if (!any_macro) {
            out.layers_.push_back(layer);
            continue;
        }
        std::array<Layer, 8> sub;
        for (const Gate& g : layer) {
            if (g.kind == GateKind::CompositeU) {
                auto seq = expand_composite_u(g.angle, g.q0, g.q1);
                for (std::size_t i = 0; i < seq.size(); ++i) sub[i].push_back(seq[i]);
            } else {
                sub[0].push_back(g);
            }
        }
        for (auto& l : sub) out.layers_.push_back(std::move(l));
    }
    return out;
}

}  // namespace topo
