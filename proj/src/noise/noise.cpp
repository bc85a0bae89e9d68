#include "topocirc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

#include "topocirc/engine.hpp"
#include "topocirc/errors.hpp"

namespace topo {

namespace {

// Prefix states are cached when gates × amplitudes stays below this.
constexpr std::size_t kPrefixCacheAmplitudes = std::size_t{1} << 22;

struct PauliEvent {
    std::size_t gate;  // applied right after this gate
    Qubit qubit;
    int pauli;  // 0 = X, 1 = Y, 2 = Z
};

// Elementary gate with its matrix entries evaluated once.
struct BakedGate {
    GateKind kind;
    Qubit q0, q1;
    cplx a, b;  // RY: (cos, sin) of θ/2 in the real parts; RZ: diagonal phases
};

BakedGate bake(const Gate& g) {
    const cplx I{0.0, 1.0};
    switch (g.kind) {
        case GateKind::RY: return {g.kind, g.q0, g.q1, std::cos(g.angle / 2), std::sin(g.angle / 2)};
        case GateKind::RZ:
            return {g.kind, g.q0, g.q1, std::exp(-I * (g.angle / 2)), std::exp(I * (g.angle / 2))};
        default: return {g.kind, g.q0, g.q1, 0.0, 0.0};
    }
}

void apply_baked(StateVector& s, const BakedGate& g) {
    switch (g.kind) {
        case GateKind::RY: s.apply_real_1q(g.q0, g.a.real(), -g.b.real(), g.b.real(), g.a.real()); break;
        case GateKind::RZ: s.apply_diag(g.q0, g.a, g.b); break;
        default: s.apply_cx(g.q0, g.q1); break;
    }
}

void apply_pauli(StateVector& s, Qubit q, int pauli) {
    switch (pauli) {
        case 0: s.apply_x(q); break;
        case 1: s.apply_y(q); break;
        default: s.apply_z(q); break;
    }
}

std::uint64_t sample_outcome(std::span<const cplx> amps, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) return i;
    }
    // Rounding left u above the accumulated total; take the last populated state.
    for (std::size_t i = amps.size(); i-- > 0;)
        if (std::norm(amps[i]) > 0.0) return i;
    return 0;
}

class TrajectoryRunner {
public:
    TrajectoryRunner(const Circuit& expanded, const StateVector& input, const NoiseModel& model)
        : model_(model), input_(input), ideal_final_(input) {
        for (const Layer& l : expanded.layers())
            for (const Gate& g : l) {
                validate_gate(g, input.num_qubits());
                gates_.push_back(g);
                baked_.push_back(bake(g));
            }
        const bool cache = gates_.size() * input.dim() <= kPrefixCacheAmplitudes;
        if (cache) prefix_.reserve(gates_.size());
        for (const Gate& g : gates_) {
            apply_gate(ideal_final_, g);
            if (cache) prefix_.push_back(ideal_final_);
        }
    }

    std::uint64_t shot(std::uint64_t index) const {
        std::seed_seq seq{static_cast<std::uint32_t>(model_.seed),
                          static_cast<std::uint32_t>(model_.seed >> 32),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        std::vector<PauliEvent> events;
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            const double p = g.kind == GateKind::CNOT ? model_.p2 : model_.p1;
            const Qubit touched[2] = {g.q0, g.q1};
            const std::size_t n = g.is_two_qubit() ? 2 : 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (unit(rng) < p) {
                    const int pauli = std::min(2, static_cast<int>(unit(rng) * 3.0));
                    events.push_back({i, touched[j], pauli});
                }
            }
        }

        std::uint64_t outcome;
        const double u = unit(rng);
        if (events.empty()) {
            outcome = sample_outcome(ideal_final_.amplitudes(), u);
        } else {
            StateVector s = start_state(events.front().gate);
            std::size_t e = 0;
            for (std::size_t i = events.front().gate; i < gates_.size(); ++i) {
                if (i != events.front().gate || prefix_.empty()) apply_baked(s, baked_[i]);
                while (e < events.size() && events[e].gate == i) {
                    apply_pauli(s, events[e].qubit, events[e].pauli);
                    ++e;
                }
            }
            outcome = sample_outcome(s.amplitudes(), u);
        }

        for (Qubit q = 0; q < input_.num_qubits(); ++q) {
            const ReadoutError r = model_.readout_for(q);
            const bool excited = (outcome >> q) & 1U;
            const double flip = excited ? r.p_g_given_e : r.p_e_given_g;
            if (unit(rng) < flip) outcome ^= std::uint64_t{1} << q;
        }
        return outcome;
    }

private:
    // With the cache: the state right after gate `first`. Without it: the state
    // right before it, and the caller applies gate `first` itself.
    StateVector start_state(std::size_t first) const {
        if (!prefix_.empty()) return prefix_[first];
        StateVector s = input_;
        for (std::size_t i = 0; i < first; ++i) apply_baked(s, baked_[i]);
        return s;
    }

    const NoiseModel& model_;
    const StateVector& input_;
    std::vector<Gate> gates_;
    std::vector<BakedGate> baked_;
    StateVector ideal_final_;
    std::vector<StateVector> prefix_;
};

}  // namespace

NoiseModel NoiseModel::ideal(std::size_t shots, std::uint64_t seed) {
    NoiseModel m;
    m.p1 = 0.0;
    m.p2 = 0.0;
    m.readout.clear();
    m.shots = shots;
    m.seed = seed;
    return m;
}

ReadoutError NoiseModel::readout_for(Qubit q) const {
    if (readout.empty()) return {};
    if (readout.size() == 1) return readout.front();
    return readout.at(q);
}

void NoiseModel::validate(std::size_t num_qubits) const {
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " outside [0, 1]");
    };
    prob(p1, "p1");
    prob(p2, "p2");
    for (const auto& r : readout) {
        prob(r.p_e_given_g, "readout P(e|g)");
        prob(r.p_g_given_e, "readout P(g|e)");
    }
    if (readout.size() > 1 && readout.size() != num_qubits) {
        throw InvalidArgument("readout needs 0, 1 or num_qubits entries");
    }
    if (shots < 1) throw InvalidArgument("shots must be at least 1");
}

std::string bitstring(std::uint64_t outcome, std::size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q)
        if ((outcome >> q) & 1U) s[num_qubits - 1 - q] = '1';
    return s;
}

std::vector<double> MeasurementRecord::frequencies() const {
    std::vector<double> f(num_qubits, 0.0);
    for (const auto& [bits, n] : counts)
        for (std::size_t q = 0; q < num_qubits; ++q)
            if (bits[num_qubits - 1 - q] == '1') f[q] += static_cast<double>(n);
    for (double& v : f) v /= static_cast<double>(shots);
    return f;
}

std::vector<double> MeasurementRecord::standard_errors() const {
    std::vector<double> se = frequencies();
    for (double& v : se) v = std::sqrt(v * (1.0 - v) / static_cast<double>(shots));
    return se;
}

MeasurementRecord run_noisy(const Circuit& circuit, const StateVector& input,
                            const NoiseModel& model, std::size_t threads) {
    if (circuit.num_qubits() > kMaxNoisyQubits) {
        throw GuardViolation("noisy emulation limited to " + std::to_string(kMaxNoisyQubits) +
                             " qubits");
    }
    if (circuit.num_qubits() != input.num_qubits()) {
        throw InvalidArgument("circuit and state register sizes differ");
    }
    model.validate(circuit.num_qubits());

    const TrajectoryRunner runner(circuit.expanded(), input, model);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<std::size_t>(threads, model.shots);

    std::vector<std::unordered_map<std::uint64_t, std::size_t>> partial(threads);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                const std::size_t lo = model.shots * t / threads;
                const std::size_t hi = model.shots * (t + 1) / threads;
                for (std::size_t s = lo; s < hi; ++s) ++partial[t][runner.shot(s)];
            });
        }
    }

    MeasurementRecord rec;
    rec.num_qubits = circuit.num_qubits();
    rec.shots = model.shots;
    for (const auto& part : partial)
        for (const auto& [outcome, n] : part) rec.counts[bitstring(outcome, rec.num_qubits)] += n;
    return rec;
}

std::vector<double> readout_mitigate(const MeasurementRecord& record, const NoiseModel& model) {
    std::vector<double> f = record.frequencies();
    for (Qubit q = 0; q < f.size(); ++q) {
        const ReadoutError r = model.readout_for(q);
        const double det = 1.0 - r.p_e_given_g - r.p_g_given_e;
        if (std::abs(det) < 1e-12) {
            throw SingularMatrix("readout confusion matrix of qubit " + std::to_string(q) +
                                 " is singular");
        }
        f[q] = std::clamp((f[q] - r.p_e_given_g) / det, 0.0, 1.0);
    }
    return f;
}

}  // namespace topo
