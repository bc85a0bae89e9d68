// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "topocirc/codegen.hpp"
#include "topocirc/composite.hpp"
#include "topocirc/displacement.hpp"
#include "topocirc/edge.hpp"
#include "topocirc/engine.hpp"
#include "topocirc/floquet.hpp"
#include "topocirc/lattice.hpp"
#include "topocirc/noise.hpp"
#include "topocirc/winding.hpp"

using namespace topo;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I{0.0, 1.0};

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Anchor {
    char panel_zero, panel_pi;
    double alpha, beta;
    int nu0, nu_pi;
};
// Rotation angles and winding numbers of the four experimental settings.
const Anchor kAnchors[] = {{'a', 'b', kPi, 0.9 * kPi, 0, 0},
                           {'c', 'd', 1.9 * kPi, 0.4 * kPi, 0, 1},
                           {'e', 'f', 0.1 * kPi, 0.7 * kPi, 1, 0},
                           {'g', 'h', kPi, 1.9 * kPi, 1, 1}};

std::size_t argmax(const std::vector<double>& p) {
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// 1. Expansion applied gate by gate to the four two-qubit basis states versus
//    the block written out by hand: cosθ, -i·sinθ on {ge, eg}; {gg, ee} fixed
//    up to a diagonal phase.
Outcome gate_identity() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    double worst = 0.0, worst_phase = 0.0;
    for (int s = 0; s < 100; ++s) {
        const double t = angle(rng);
        cplx col[4][4];
        for (std::size_t in = 0; in < 4; ++in) {
            std::vector<cplx> amps(4, 0.0);
            amps[in] = 1.0;
            StateVector v(2, amps);
            for (const Gate& g : expand_composite_u(t, 1, 0)) apply_gate(v, g);
            for (std::size_t out = 0; out < 4; ++out) col[in][out] = v[out];
        }
        // Little-endian index: qubit 1 is qa, so |ge> (qa=g, qb=e) is index 1.
        const cplx want[4][4] = {{col[0][0], 0, 0, 0},
                                 {0, std::cos(t), -I * std::sin(t), 0},
                                 {0, -I * std::sin(t), std::cos(t), 0},
                                 {0, 0, 0, col[3][3]}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(col[i][j] - want[i][j]));
        worst_phase = std::max({worst_phase, std::abs(std::abs(col[0][0]) - 1.0),
                                std::abs(std::abs(col[3][3]) - 1.0)});
    }
    const double err = std::max(worst, worst_phase);
    return {err <= 1e-12, fmt("100 angles, max deviation %.2e", err)};
}

// 2. Subspace engine versus dense statevector engine.
Outcome engine_equivalence() {
    double worst = 0.0;
    std::size_t cases = 0;
    const auto compare = [&](const Circuit& cycle, std::size_t n_max) {
        const std::size_t q = cycle.num_qubits();
        for (Qubit in = 0; in < q; ++in) {
            SingleExcitationState sub(q, in);
            StateVector full = StateVector::single_excitation(q, in);
            for (std::size_t n = 1; n <= n_max; ++n) {
                apply_circuit(sub, cycle);
                apply_circuit(full, cycle);
                worst = std::max(worst, max_diff(SingleExcitationState::restrict(full).amplitudes(),
                                                 sub.amplitudes()));
                ++cases;
            }
        }
    };
    for (const Anchor& a : kAnchors) compare(build_u1_cycle({a.alpha, a.beta, 4, 1}), 5);
    compare(build_u2_cycle({1.9 * kPi, 0.8 * kPi, 2, 2, 1}), 3);
    compare(build_u2_cycle({0.5 * kPi, 1.5 * kPi, 2, 2, 1}), 3);
    return {worst <= 1e-10, fmt("%zu (input, n) cases, max deviation %.2e", cases, worst)};
}

// 3. Winding numbers at the four anchors.
Outcome winding_anchors() {
    bool ok = true;
    double worst = 0.0;
    std::string got;
    for (const Anchor& a : kAnchors) {
        const WindingResult z = winding_1d(a.alpha, a.beta, Gap::Zero, 1024);
        const WindingResult p = winding_1d(a.alpha, a.beta, Gap::Pi, 1024);
        ok = ok && z.value == a.nu0 && p.value == a.nu_pi;
        worst = std::max({worst, z.residual, p.residual});
        got += fmt(" (%.1f,%.1f)->(%d,%d)", a.alpha / kPi, a.beta / kPi, z.value, p.value);
    }
    return {ok && worst < 1e-3, fmt("max residual %.2e;%s", worst, got.c_str())};
}

// 4. Edge-state existence mirrors the winding numbers; states are eigenstates.
Outcome bulk_boundary() {
    bool ok = true;
    double worst = 0.0;
    for (const Anchor& a : kAnchors) {
        const EdgeStateAnalytics e = edge_analytics(a.alpha, a.beta);
        const int nu0 = winding_1d(a.alpha, a.beta, Gap::Zero).value;
        const int nup = winding_1d(a.alpha, a.beta, Gap::Pi).value;
        ok = ok && e.exists0 == (nu0 == 1) && e.exists_pi == (nup == 1);
        for (Gap g : {Gap::Zero, Gap::Pi})
            if (e.exists(g)) worst = std::max(worst, edge_eigenstate_check(a.alpha, a.beta, 20, g));
    }
    return {ok && worst <= 1e-6, fmt("existence matches: %s, max eigenstate residual %.2e (N=20)",
                                     ok ? "yes" : "no", worst)};
}

// 5. Time-averaged mean displacements.
Outcome mean_displacement_detection() {
    bool ok = true;
    std::string got;
    for (const Anchor& a : kAnchors) {
        const DisplacementSeries s = mean_displacement(a.alpha, a.beta, 81, 20);
        ok = ok && std::abs(s.center0 - a.nu0) <= 0.1 && std::abs(s.center_pi - a.nu_pi) <= 0.1;
        got += fmt(" (%.2f,%.2f)", s.center0, s.center_pi);
    }
    return {ok, "centres" + got};
}

struct Panel {
    char name;
    double alpha, beta;
    Qubit input;       // 0: |eggggggg>, 1: |gegggggg>
    bool topological;  // edge state expected at the input qubit
};

std::vector<Panel> panels() {
    std::vector<Panel> v;
    for (const Anchor& a : kAnchors) {
        v.push_back({a.panel_zero, a.alpha, a.beta, 0, a.nu0 == 1});
        v.push_back({a.panel_pi, a.alpha, a.beta, 1, a.nu_pi == 1});
    }
    return v;
}

// 6. Noiseless (U1)^3 on eight qubits.
Outcome fig3_pattern() {
    bool ok = true;
    std::string detail, failed;
    for (const Panel& p : panels()) {
        SingleExcitationState s(8, p.input);
        apply_circuit(s, build_u1_circuit({p.alpha, p.beta, 4, 3}));
        const auto prob = excitation_distribution(s);
        const std::size_t k = argmax(prob);
        const bool good = p.topological ? k == p.input : k != p.input;
        ok = ok && good;
        detail += fmt(" %c:Q%zu(%.2f)", p.name, k + 1, prob[k]);
        if (!good) failed += fmt(" %c", p.name);
    }
    if (!failed.empty()) detail += "; pattern broken in panel" + failed;
    return {ok, "argmax" + detail};
}

// 7. The four topological panels under the default noise model, 32 seeds.
Outcome noisy_pattern() {
    std::vector<Panel> topo_panels;
    for (const Panel& p : panels())
        if (p.topological) topo_panels.push_back(p);
    std::vector<std::size_t> per_panel(topo_panels.size(), 0);
    std::size_t good_runs = 0;
    for (std::uint64_t seed = 1; seed <= 32; ++seed) {
        bool all = true;
        for (std::size_t i = 0; i < topo_panels.size(); ++i) {
            const Panel& p = topo_panels[i];
            NoiseModel m;
            m.seed = seed;
            const auto rec = run_noisy(build_u1_circuit({p.alpha, p.beta, 4, 3}),
                                       StateVector::single_excitation(8, p.input), m, 0);
            const bool hit = argmax(rec.frequencies()) == p.input;
            per_panel[i] += hit;
            all = all && hit;
        }
        good_runs += all;
    }
    std::string detail = fmt("%zu/32 runs keep all four edge maxima (panels", good_runs);
    for (std::size_t i = 0; i < topo_panels.size(); ++i)
        detail += fmt(" %c:%zu", topo_panels[i].name, per_panel[i]);
    return {good_runs >= 29, detail + ")"};
}

// 8. 2D invariants and edge transport.
Outcome two_d() {
    const WindingResult t0 = winding_2d(0.0, 0.0, Gap::Zero, 64, 64);
    const WindingResult tp = winding_2d(0.0, 0.0, Gap::Pi, 64, 64);
    const WindingResult w0 = winding_2d(1.9 * kPi, 0.8 * kPi, Gap::Zero, 64, 64);
    const WindingResult wp = winding_2d(1.9 * kPi, 0.8 * kPi, Gap::Pi, 64, 64);
    const bool trivial = t0.value == 0 && tp.value == 0;
    const bool anomalous = w0.value == 1 && wp.value == 1 && w0.residual < 1e-2 && wp.residual < 1e-2;

    const FloquetParams2D p{1.9 * kPi, 0.8 * kPi, 5, 5, 10};
    const LatticeMap2D map(5, 5);
    SingleExcitationState s(map.num_qubits(), map.qubit(1, 1, Spin::Up));
    apply_circuit(s, build_u2_circuit(p));
    const auto prob = excitation_distribution(s);
    double boundary = 0.0;
    for (Qubit q = 0; q < prob.size(); ++q) {
        const Site2D site = map.site(q);
        if (map.on_boundary(site.x, site.y)) boundary += prob[q];
    }
    return {trivial && anomalous && boundary >= 0.70,
            fmt("(0,0)->(%d,%d); (1.9,0.8)->(%d,%d) residuals %.1e/%.1e; boundary weight %.3f",
                t0.value, tp.value, w0.value, wp.value, w0.residual, wp.residual, boundary)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t gate_lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        n += line.rfind("ry(", 0) == 0 || line.rfind("rz(", 0) == 0 || line.rfind("cx ", 0) == 0;
    return n;
}

// 9. Round trip, per-cycle gate budget, golden files.
Outcome codegen() {
    double worst = 0.0;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (std::size_t n = 2; n <= 4; ++n) {
        const Circuit c = build_u1_circuit({1.3 * kPi, 0.7 * kPi, n, 2}).expanded();
        const Circuit back = parse_qasm(emit(c, Dialect::QASM2).text);
        std::vector<cplx> amps(std::size_t{1} << (2 * n));
        double norm = 0.0;
        for (cplx& a : amps) norm += std::norm(a = {g(rng), g(rng)});
        for (cplx& a : amps) a /= std::sqrt(norm);
        StateVector x(2 * n, amps), y = x;
        apply_circuit(x, c);
        apply_circuit(y, back);
        worst = std::max(worst, max_diff(x.amplitudes(), y.amplitudes()));
    }

    // Required budget 8·(2N-1) statements per cycle.
    std::string budget;
    bool budget_ok = true;
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::size_t got = gate_lines(emit(build_u1_cycle({0.3, 1.2, n, 1}).expanded(), Dialect::QASM2).text);
        budget_ok = budget_ok && got == 8 * (2 * n - 1);
        budget += fmt(" N=%zu:%zu/%zu", n, got, 8 * (2 * n - 1));
    }

    Circuit one(2);
    one.add_gate(composite_u(kPi / 2, 0, 1));
    const Circuit u1 = build_u1_circuit({kPi, 1.9 * kPi, 4, 3}).expanded();
    const Circuit u2 = build_u2_circuit({0.7 * kPi, 0.3 * kPi, 2, 2, 1}).expanded();
    const std::string dir = TOPOCIRC_GOLDEN_DIR;
    const std::pair<std::string, std::string> golden[] = {
        {"composite_half_pi.qasm", emit(one.expanded(), Dialect::QASM2).text},
        {"composite_half_pi.quil", emit(one.expanded(), Dialect::Quil).text},
        {"u1_n4_x3.qasm", emit(u1, Dialect::QASM2).text},
        {"u1_n4_x3.quil", emit(u1, Dialect::Quil).text},
        {"u2_2x2.qasm", emit(u2, Dialect::QASM2).text}};
    std::size_t stable = 0;
    for (const auto& [file, text] : golden) stable += read_file(dir + "/" + file) == text;

    const bool ok = worst <= 1e-12 && budget_ok && stable == std::size(golden);
    return {ok, fmt("round trip %.1e; goldens %zu/%zu; statements/cycle vs 8(2N-1):", worst, stable,
                    std::size(golden)) + budget};
}

// 10. 100 cycles on a 100,000-qubit chain.
Outcome performance() {
    const std::size_t sites = 50000;
    const Circuit cycle = build_u1_cycle({kPi, 1.9 * kPi, sites, 1});
    SingleExcitationState s(2 * sites, 2 * (sites / 2));
    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 0; n < 100; ++n) apply_circuit(s, cycle);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double norm = s.norm_squared();
    return {sec < 5.0 && std::abs(norm - 1.0) < 1e-9,
            fmt("%.3f s propagation, norm drift %.1e", sec, std::abs(norm - 1.0))};
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "gate-identity oracle", 1.0, gate_identity},
        {2, "engine equivalence", 10.0, engine_equivalence},
        {3, "winding anchors", 5.0, winding_anchors},
        {4, "bulk-boundary correspondence", 0.0, bulk_boundary},
        {5, "mean-displacement detection", 30.0, mean_displacement_detection},
        {6, "edge-localization pattern (noiseless)", 0.0, fig3_pattern},
        {7, "edge-localization under noise", 0.0, noisy_pattern},
        {8, "2D invariants and edge transport", 300.0, two_d},
        {9, "codegen", 0.0, codegen},
        {10, "single-excitation performance", 0.0, performance},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = fmt("%.2f s", sec);
        if (c.time_limit > 0) {
            timing += fmt(" / limit %.0f s", c.time_limit);
            pass = pass && sec < c.time_limit;
        }
        std::printf("%s %2d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
        failures += !pass;
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
