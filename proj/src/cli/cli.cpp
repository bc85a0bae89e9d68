#include "topocirc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topocirc/bloch.hpp"
#include "topocirc/codegen.hpp"
#include "topocirc/composite.hpp"
#include "topocirc/displacement.hpp"
#include "topocirc/edge.hpp"
#include "topocirc/engine.hpp"
#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"
#include "topocirc/lattice.hpp"
#include "topocirc/phase_diagram.hpp"
#include "topocirc/winding.hpp"

#ifndef TOPOCIRC_VERSION_STRING
#define TOPOCIRC_VERSION_STRING "0.0.0"
#endif

namespace topo::cli {
namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = TOPOCIRC_VERSION_STRING;
constexpr const char* kProvenanceTag = "provenance: ";

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t parse_count(std::string_view text, const char* what) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw UsageError(std::string("bad ") + what + ": '" + std::string(text) + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

// Everything a command hands back for serialization.
struct Output {
    json parameters = json::object();
    json grids = json::object();
    json seed = nullptr;
    json result = json::object();
    std::string csv;                 // empty: command has no CSV form
    std::optional<Dialect> program;  // export only; text in `program_text`
    std::string program_text;
    int status = 0;
};

std::vector<double> distribution(const SingleExcitationState& s) { return excitation_distribution(s); }
std::vector<double> distribution(const StateVector& s) { return excitation_distribution(s); }

std::size_t argmax(const std::vector<double>& p) {
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::string qubit_label(std::size_t q) { return "Q" + std::to_string(q + 1); }

std::string label_2d(const LatticeMap2D& map, Qubit q) {
    const Site2D s = map.site(q);
    return std::string(s.spin == Spin::Up ? "U:" : "D:") + std::to_string(s.x) + "," +
           std::to_string(s.y);
}

double required(const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError(std::string(flag) + " is required");
    return *v;
}

// ---- options ---------------------------------------------------------------

struct ChainOpts {
    std::optional<double> alpha, beta;
    std::size_t sites = 4;
    std::size_t cycles = 1;
};

struct PlaneOpts {
    std::optional<double> gamma, delta;
    std::size_t nx = 5;
    std::size_t ny = 5;
    std::size_t cycles = 1;
};

void add_chain(CLI::App* c, ChainOpts& o, bool cycles) {
    c->add_option("--alpha", o.alpha, "on-site drive angle, units of pi");
    c->add_option("--beta", o.beta, "spin-orbit drive angle, units of pi");
    c->add_option("--sites", o.sites, "chain length N (2N qubits)")->capture_default_str();
    if (cycles) c->add_option("--cycles", o.cycles, "drive periods")->capture_default_str();
}

void add_plane(CLI::App* c, PlaneOpts& o, bool cycles) {
    c->add_option("--gamma", o.gamma, "x spin-orbit drive angle, units of pi");
    c->add_option("--delta", o.delta, "y spin-orbit drive angle, units of pi");
    c->add_option("--nx", o.nx, "lattice width")->capture_default_str();
    c->add_option("--ny", o.ny, "lattice height")->capture_default_str();
    if (cycles) c->add_option("--cycles", o.cycles, "drive periods")->capture_default_str();
}

FloquetParams1D chain_params(const ChainOpts& o) {
    FloquetParams1D p;
    p.alpha = required(o.alpha, "--alpha") * kPi;
    p.beta = required(o.beta, "--beta") * kPi;
    p.sites = o.sites;
    p.cycles = o.cycles;
    p.validate();
    return p;
}

FloquetParams2D plane_params(const PlaneOpts& o) {
    FloquetParams2D p;
    p.gamma = required(o.gamma, "--gamma") * kPi;
    p.delta = required(o.delta, "--delta") * kPi;
    p.nx = o.nx;
    p.ny = o.ny;
    p.cycles = o.cycles;
    p.validate();
    return p;
}

json chain_json(const ChainOpts& o, bool cycles) {
    json j{{"alpha", *o.alpha}, {"beta", *o.beta}, {"sites", o.sites}};
    if (cycles) j["cycles"] = o.cycles;
    return j;
}

json plane_json(const PlaneOpts& o, bool cycles) {
    json j{{"gamma", *o.gamma}, {"delta", *o.delta}, {"nx", o.nx}, {"ny", o.ny}};
    if (cycles) j["cycles"] = o.cycles;
    return j;
}

// One lattice model chosen by --lattice, for noisy-run and export.
struct ModelOpts {
    std::string lattice = "1d";
    ChainOpts chain{.alpha = {}, .beta = {}, .sites = 4, .cycles = 3};
    PlaneOpts plane{.gamma = {}, .delta = {}, .nx = 3, .ny = 3, .cycles = 3};
    std::size_t cycles = 3;
    std::string input;
};

void add_model(CLI::App* c, ModelOpts& o, bool input) {
    c->add_option("--lattice", o.lattice, "1d or 2d")
        ->check(CLI::IsMember({"1d", "2d"}))
        ->capture_default_str();
    add_chain(c, o.chain, false);
    c->add_option("--gamma", o.plane.gamma, "x spin-orbit drive angle, units of pi (2d)");
    c->add_option("--delta", o.plane.delta, "y spin-orbit drive angle, units of pi (2d)");
    c->add_option("--nx", o.plane.nx, "lattice width (2d)")->capture_default_str();
    c->add_option("--ny", o.plane.ny, "lattice height (2d)")->capture_default_str();
    c->add_option("--cycles", o.cycles, "drive periods")->capture_default_str();
    if (input) c->add_option("--input", o.input, "odd:x / even:x (1d), U:x,y / D:x,y (2d)");
}

struct Model {
    Circuit circuit;
    Qubit input = 0;
    json parameters;
};

Model build_model(ModelOpts o, bool input) {
    Model m;
    if (o.lattice == "1d") {
        o.chain.cycles = o.cycles;
        m.circuit = build_u1_circuit(chain_params(o.chain));
        m.parameters = chain_json(o.chain, true);
        if (input) {
            if (o.input.empty()) o.input = "odd:1";
            m.input = parse_input_1d(o.input, o.chain.sites);
        }
    } else {
        o.plane.cycles = o.cycles;
        m.circuit = build_u2_circuit(plane_params(o.plane));
        m.parameters = plane_json(o.plane, true);
        if (input) {
            if (o.input.empty()) o.input = "U:1,1";
            m.input = parse_input_2d(o.input, o.plane.nx, o.plane.ny);
        }
    }
    json params{{"lattice", o.lattice}};
    params.update(m.parameters);
    m.parameters = std::move(params);
    if (input) m.parameters["input"] = o.input;
    return m;
}

// ---- commands --------------------------------------------------------------

Output cmd_check_u(std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw UsageError("--samples must be positive");
    constexpr double tolerance = 1e-12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    double worst = 0.0, worst_theta = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double theta = angle(rng);
        const double e = (composite_u_matrix(theta) - composite_u_target(theta)).cwiseAbs().maxCoeff();
        if (e > worst) worst = e, worst_theta = theta;
    }
    Output o;
    o.parameters = {{"samples", samples}};
    o.seed = seed;
    o.result = {{"samples", samples},
                {"max_error", worst},
                {"worst_theta", worst_theta},
                {"tolerance", tolerance},
                {"pass", worst <= tolerance}};
    o.status = worst <= tolerance ? 0 : 1;
    return o;
}

template <class State>
std::vector<std::vector<double>> propagate(State s, const Circuit& cycle, std::size_t cycles) {
    std::vector<std::vector<double>> series{distribution(s)};
    for (std::size_t n = 0; n < cycles; ++n) {
        apply_circuit(s, cycle);
        series.push_back(distribution(s));
    }
    return series;
}

std::vector<std::vector<double>> propagate_from(Qubit q, std::size_t nq, const Circuit& cycle,
                                                std::size_t cycles, const std::string& engine) {
    if (engine == "full") return propagate(StateVector::single_excitation(nq, q), cycle, cycles);
    return propagate(SingleExcitationState(nq, q), cycle, cycles);
}

std::string series_csv(const std::vector<std::vector<double>>& series) {
    std::string s = "cycle";
    for (std::size_t q = 0; q < series.front().size(); ++q) s += "," + qubit_label(q);
    s += "\n";
    for (std::size_t n = 0; n < series.size(); ++n) {
        s += std::to_string(n);
        for (double p : series[n]) s += "," + num(p);
        s += "\n";
    }
    return s;
}

Output cmd_simulate_1d(const ChainOpts& c, std::string input, const std::string& frame,
                       const std::string& engine) {
    const FloquetParams1D p = chain_params(c);
    const Circuit cycle = frame == "u1" ? build_u1_cycle(p) : build_u1_prime_cycle(p);
    const Qubit q = parse_input_1d(input, p.sites);
    const auto series = propagate_from(q, 2 * p.sites, cycle, p.cycles, engine);
    const auto& final_p = series.back();
    const std::size_t k = argmax(final_p);

    Output o;
    o.parameters = chain_json(c, true);
    o.parameters["input"] = input;
    o.parameters["frame"] = frame;
    o.parameters["engine"] = engine;
    o.result = {{"input_qubit", q},
                {"distribution", final_p},
                {"argmax", k},
                {"argmax_qubit", qubit_label(k)},
                {"argmax_probability", final_p[k]}};
    o.csv = series_csv(series);
    return o;
}

Output cmd_simulate_2d(const PlaneOpts& c, std::string input, const std::string& engine) {
    const FloquetParams2D p = plane_params(c);
    const LatticeMap2D map(p.nx, p.ny);
    const Qubit q = parse_input_2d(input, p.nx, p.ny);
    const auto series = propagate_from(q, map.num_qubits(), build_u2_cycle(p), p.cycles, engine);
    const auto& final_p = series.back();
    const std::size_t k = argmax(final_p);

    double boundary = 0.0;
    std::string csv = "x,y,p_up,p_down\n";
    for (std::size_t y = 1; y <= p.ny; ++y)
        for (std::size_t x = 1; x <= p.nx; ++x) {
            const double up = final_p[map.qubit(x, y, Spin::Up)];
            const double down = final_p[map.qubit(x, y, Spin::Down)];
            if (map.on_boundary(x, y)) boundary += up + down;
            csv += std::to_string(x) + "," + std::to_string(y) + "," + num(up) + "," + num(down) + "\n";
        }

    Output o;
    o.parameters = plane_json(c, true);
    o.parameters["input"] = input;
    o.parameters["engine"] = engine;
    o.result = {{"input_qubit", q},
                {"distribution", final_p},
                {"argmax", k},
                {"argmax_site", label_2d(map, k)},
                {"argmax_probability", final_p[k]},
                {"boundary_weight", boundary}};
    o.csv = std::move(csv);
    return o;
}

// Runs one gap; a closed gap becomes a null value and a reason.
template <class F>
void winding_entry(json& r, const char* name, Gap g, F&& f, int& status) {
    const std::string key = std::string(name) + "_" + (g == Gap::Zero ? "0" : "pi");
    try {
        const WindingResult w = f(g);
        r[key] = w.value;
        r["raw_" + key] = w.raw_integral;
        r["residual_" + key] = w.residual;
        r["min_gap_" + key] = w.min_gap;
        r["flagged_" + key] = w.flagged;
        if (w.flagged) status = 1;
    } catch (const GapClosed& e) {
        r[key] = nullptr;
        r["reason_" + key] = e.what();
        status = 1;
    }
}

Output cmd_winding_1d(const ChainOpts& c, std::size_t k_points) {
    const double a = required(c.alpha, "--alpha") * kPi, b = required(c.beta, "--beta") * kPi;
    if (k_points < 5) throw UsageError("--k-points must be at least 5");
    Output o;
    o.parameters = {{"alpha", *c.alpha}, {"beta", *c.beta}};
    o.grids = {{"k_points", k_points}};
    for (Gap g : {Gap::Zero, Gap::Pi})
        winding_entry(o.result, "nu", g, [&](Gap e) { return winding_1d(a, b, e, k_points); }, o.status);

    const QuasienergyBands bands = quasienergy_bands(a, b, uniform_k_grid(k_points));
    o.result["gap0"] = bands.gap0;
    o.result["gap_pi"] = bands.gap_pi;
    o.csv = "k,lower,upper\n";
    for (std::size_t i = 0; i < bands.k.size(); ++i)
        o.csv += num(bands.k[i]) + "," + num(bands.lower[i]) + "," + num(bands.upper[i]) + "\n";
    return o;
}

Output cmd_winding_2d(const PlaneOpts& c, std::size_t k_points, std::size_t t_points) {
    const double g = required(c.gamma, "--gamma") * kPi, d = required(c.delta, "--delta") * kPi;
    if (k_points < 5 || t_points < 1) throw UsageError("--k-points must be at least 5, --t-points at least 1");
    Output o;
    o.parameters = {{"gamma", *c.gamma}, {"delta", *c.delta}};
    std::size_t t_used = t_points;
    for (Gap e : {Gap::Zero, Gap::Pi})
        winding_entry(o.result, "W", e,
                      [&](Gap gap) {
                          WindingResult w = winding_2d(g, d, gap, k_points, t_points);
                          t_used = w.t_points;
                          return w;
                      },
                      o.status);
    o.grids = {{"k_points", k_points}, {"t_points", t_used}};
    return o;
}

struct DiagramOpts {
    std::string kind = "1d";
    double a_min = 0.0, a_max = 2.0, b_min = 0.0, b_max = 2.0;
    std::size_t a_points = 21, b_points = 21;
    std::size_t k_points = 0, t_points = 0;
};

Output cmd_phase_diagram(const DiagramOpts& d, std::size_t threads) {
    const bool one = d.kind == "1d";
    if (d.a_points == 0 || d.b_points == 0) throw UsageError("axis point counts must be positive");
    if (!(d.a_max > d.a_min) || !(d.b_max > d.b_min)) throw UsageError("axis ranges must be increasing");
    const std::size_t k = d.k_points ? d.k_points : (one ? 256 : 24);
    const std::size_t t = one ? 0 : (d.t_points ? d.t_points : 24);

    const auto to_rad = [](std::vector<double> v) {
        for (double& x : v) x *= kPi;
        return v;
    };
    const auto axis_a = centered_axis(d.a_min, d.a_max, d.a_points);
    const auto axis_b = centered_axis(d.b_min, d.b_max, d.b_points);
    const PhaseDiagram pd = phase_diagram(one ? DiagramKind::OneD : DiagramKind::TwoD,
                                          to_rad(axis_a), to_rad(axis_b), k, t, threads);

    const char* na = one ? "alpha" : "gamma";
    const char* nb = one ? "beta" : "delta";
    const char* z = one ? "nu_0" : "W_0";
    const char* pi = one ? "nu_pi" : "W_pi";

    Output o;
    o.parameters = {{"kind", d.kind},  {"a_min", d.a_min},       {"a_max", d.a_max},
                    {"b_min", d.b_min}, {"b_max", d.b_max},       {"a_points", d.a_points},
                    {"b_points", d.b_points}};
    o.grids = {{"k_points", pd.k_points}};
    if (!one) o.grids["t_points"] = pd.t_points;

    const auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
    const auto opt_csv = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    json cells = json::array();
    std::map<std::string, std::size_t> phases;
    o.csv = std::string(na) + "," + nb + "," + z + "," + pi + ",residual_0,residual_pi,note\n";
    for (std::size_t j = 0; j < axis_b.size(); ++j)
        for (std::size_t i = 0; i < axis_a.size(); ++i) {
            const PhaseCell& c = pd.at(i, j);
            cells.push_back({{na, axis_a[i]}, {nb, axis_b[j]}, {z, opt(c.zero)}, {pi, opt(c.pi)},
                             {"residual_0", c.residual0}, {"residual_pi", c.residual_pi},
                             {"note", c.note}});
            ++phases[(c.zero && c.pi) ? "(" + opt_csv(c.zero) + "," + opt_csv(c.pi) + ")" : "undefined"];
            o.csv += num(axis_a[i]) + "," + num(axis_b[j]) + "," + opt_csv(c.zero) + "," +
                     opt_csv(c.pi) + "," + num(c.residual0) + "," + num(c.residual_pi) + "," +
                     c.note + "\n";
        }
    o.result = {{std::string("axis_") + na, axis_a},
                {std::string("axis_") + nb, axis_b},
                {"phase_counts", phases},
                {"cells", std::move(cells)}};
    return o;
}

Output cmd_mean_displacement(const ChainOpts& c, std::size_t n_max) {
    const DisplacementSeries s = mean_displacement(required(c.alpha, "--alpha") * kPi,
                                                   required(c.beta, "--beta") * kPi, c.sites, n_max);
    Output o;
    o.parameters = {{"alpha", *c.alpha}, {"beta", *c.beta}, {"sites", c.sites}, {"n_max", n_max}};
    o.result = {{"center_site", s.center_site},
                {"start_qubit", qubit_label(s.start_qubit)},
                {"center_0", s.center0},
                {"center_pi", s.center_pi},
                {"nu_0_estimate", std::lround(s.center0)},
                {"nu_pi_estimate", std::lround(s.center_pi)},
                {"max_boundary_amplitude", s.max_boundary_amplitude}};
    o.csv = "n,p_bar,p_bar_prime,p_0,p_pi,running_0,running_pi\n";
    for (std::size_t n = 0; n < s.p_bar.size(); ++n)
        o.csv += std::to_string(n + 1) + "," + num(s.p_bar[n]) + "," + num(s.p_bar_prime[n]) + "," +
                 num(s.p0[n]) + "," + num(s.p_pi[n]) + "," + num(s.running_center0[n]) + "," +
                 num(s.running_center_pi[n]) + "\n";
    return o;
}

Output cmd_edge_state(const ChainOpts& c, const std::string& gap) {
    const double a = required(c.alpha, "--alpha") * kPi, b = required(c.beta, "--beta") * kPi;
    if (c.sites < 2) throw UsageError("--sites must be at least 2");
    const EdgeStateAnalytics e = edge_analytics(a, b);
    Output o;
    o.parameters = {{"alpha", *c.alpha}, {"beta", *c.beta}, {"sites", c.sites}, {"gap", gap}};
    o.result = {{"lambda_1", e.lambda1},
                {"lambda_2", e.lambda2_tilde},
                {"exists_0", e.exists0},
                {"exists_pi", e.exists_pi}};

    std::vector<Gap> gaps;
    if (gap != "pi") gaps.push_back(Gap::Zero);
    if (gap != "0") gaps.push_back(Gap::Pi);
    std::vector<std::vector<double>> profile(2, std::vector<double>(c.sites, 0.0));
    for (Gap g : gaps) {
        const std::string key = g == Gap::Zero ? "0" : "pi";
        if (!e.exists(g)) {
            o.result["residual_" + key] = nullptr;
            continue;
        }
        o.result["residual_" + key] = edge_eigenstate_check(a, b, c.sites, g);
        const auto p = excitation_distribution(edge_state(a, b, c.sites, g));
        const Spin spin = g == Gap::Zero ? Spin::Up : Spin::Down;
        const LatticeMap1D map(c.sites);
        for (std::size_t x = 1; x <= c.sites; ++x)
            profile[g == Gap::Zero ? 0 : 1][x - 1] = p[map.qubit(x, spin)];
    }
    o.csv = "x,p_0,p_pi\n";
    for (std::size_t x = 0; x < c.sites; ++x)
        o.csv += std::to_string(x + 1) + "," + num(profile[0][x]) + "," + num(profile[1][x]) + "\n";
    return o;
}

struct NoiseOpts {
    double p1 = 1e-3, p2 = 1e-2, readout = 0.03;
    std::optional<double> e_given_g, g_given_e;
    std::size_t shots = 8192;
    std::uint64_t seed = 1;
    bool mitigate = false;
};

Output cmd_noisy_run(const ModelOpts& mo, const NoiseOpts& n, std::size_t threads) {
    const Model m = build_model(mo, true);
    NoiseModel model;
    model.p1 = n.p1;
    model.p2 = n.p2;
    model.readout = {ReadoutError{n.e_given_g.value_or(n.readout), n.g_given_e.value_or(n.readout)}};
    model.shots = n.shots;
    model.seed = n.seed;
    const std::size_t nq = m.circuit.num_qubits();
    model.validate(nq);

    const MeasurementRecord rec = run_noisy(m.circuit, StateVector::single_excitation(nq, m.input),
                                            model, threads);
    SingleExcitationState ideal_state(nq, m.input);
    apply_circuit(ideal_state, m.circuit);
    const auto ideal = excitation_distribution(ideal_state);
    const auto freq = rec.frequencies();
    const auto se = rec.standard_errors();
    const std::size_t k = argmax(freq);

    Output o;
    o.parameters = m.parameters;
    o.parameters["noise"] = {{"p1", n.p1},
                             {"p2", n.p2},
                             {"readout_e_given_g", model.readout[0].p_e_given_g},
                             {"readout_g_given_e", model.readout[0].p_g_given_e},
                             {"shots", n.shots},
                             {"mitigate", n.mitigate}};
    o.seed = n.seed;
    o.result = {{"num_qubits", nq}, {"shots", rec.shots}, {"counts", rec.counts},
                {"marginals", freq}, {"standard_errors", se}, {"ideal", ideal},
                {"argmax", k},       {"argmax_qubit", qubit_label(k)}};
    std::vector<double> mitigated;
    if (n.mitigate) {
        mitigated = readout_mitigate(rec, model);
        o.result["mitigated"] = mitigated;
    }
    o.csv = std::string("qubit,marginal,standard_error,ideal") + (n.mitigate ? ",mitigated" : "") + "\n";
    for (std::size_t q = 0; q < nq; ++q) {
        o.csv += qubit_label(q) + "," + num(freq[q]) + "," + num(se[q]) + "," + num(ideal[q]);
        if (n.mitigate) o.csv += "," + num(mitigated[q]);
        o.csv += "\n";
    }
    return o;
}

Output cmd_export(const ModelOpts& mo, const std::string& dialect) {
    const Model m = build_model(mo, false);
    const Dialect d = parse_dialect(dialect);
    const EmittedProgram prog = emit(m.circuit.expanded(), d);
    Output o;
    o.parameters = m.parameters;
    o.parameters["dialect"] = to_string(d);
    o.result = {{"gate_count", prog.gate_count}, {"qubit_count", prog.qubit_count}};
    o.program = d;
    o.program_text = prog.text;
    return o;
}

// ---- argv plumbing ---------------------------------------------------------

const std::vector<std::string> kCommands = {"check-u",     "simulate-1d",       "simulate-2d",
                                            "winding-1d",  "winding-2d",        "phase-diagram",
                                            "mean-displacement", "edge-state",  "noisy-run",
                                            "export"};

// Removes `flag value` / `flag=value` occurrences, returning the last value.
std::optional<std::string> take_flag(std::vector<std::string>& args,
                                     std::initializer_list<std::string_view> names) {
    std::optional<std::string> value;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        bool hit = false;
        for (std::string_view n : names) {
            if (a == n) {
                if (i + 1 >= args.size()) throw UsageError(std::string(n) + " needs a value");
                value = args[++i];
                hit = true;
            } else if (a.size() > n.size() && a.compare(0, n.size(), n) == 0 && a[n.size()] == '=') {
                value = a.substr(n.size() + 1);
                hit = true;
            }
            if (hit) break;
        }
        if (!hit) kept.push_back(a);
    }
    args = std::move(kept);
    return value;
}

json provenance(const std::vector<std::string>& argv, const std::string& command, const Output& o,
                const char* output_kind) {
    return {{"tool", "topocirc"},   {"version", kVersion}, {"command", command},
            {"argv", argv},         {"parameters", o.parameters}, {"seed", o.seed},
            {"grids", o.grids},     {"output", output_kind}};
}

// Finds the provenance record in any file this tool writes.
json extract_provenance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string_view v = line;
        for (std::string_view prefix : {"# ", "// "})
            if (v.starts_with(prefix)) {
                v.remove_prefix(prefix.size());
                break;
            }
        if (v.starts_with(kProvenanceTag)) {
            v.remove_prefix(std::string_view(kProvenanceTag).size());
            return json::parse(v, nullptr, false);
        }
    }
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("provenance")) return doc["provenance"];
    return json::value_t::discarded;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message, int code,
                 json extra = json::object()) {
    json e{{"kind", kind}, {"message", message}, {"exit_code", code}};
    e.update(extra);
    err << json{{"error", e}}.dump() << "\n";
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

int replay(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    args.erase(args.begin());
    const std::optional<std::string> target = take_flag(args, {"-o", "--output"});
    if (args.size() != 1) throw UsageError("usage: --replay FILE [-o OUTPUT]");
    const json prov = extract_provenance(read_file(args[0]));
    if (prov.is_discarded() || !prov.is_object() || !prov.contains("argv"))
        throw UsageError("no provenance record in " + args[0]);
    std::vector<std::string> argv = prov["argv"].get<std::vector<std::string>>();
    const std::string kind = prov.value("output", "json");
    argv.push_back(kind == "csv" ? "--csv" : "-o");
    argv.push_back(target.value_or("-"));
    return dispatch(std::move(argv), out, err);
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    // Config values go right after the subcommand so explicit flags win.
    if (const auto cfg = take_flag(args, {"--config"})) {
        if (args.empty()) throw UsageError("--config needs a subcommand");
        std::vector<std::string> merged{args.front()};
        for (const auto& [k, v] : read_config(*cfg)) merged.push_back("--" + k + "=" + v);
        merged.insert(merged.end(), args.begin() + 1, args.end());
        args = std::move(merged);
    }
    std::vector<std::string> recorded = args;
    take_flag(recorded, {"-o", "--output"});
    take_flag(recorded, {"--csv"});

    CLI::App app{"Digital simulation of periodically driven spin-orbit lattices.", "topocirc"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string json_path, csv_path;
    const std::size_t env_threads = default_threads();
    std::size_t threads = env_threads;
    const auto outputs = [&](CLI::App* c, bool csv) {
        c->add_option("-o,--output", json_path, "result file ('-' for stdout)");
        if (csv) c->add_option("--csv", csv_path, "CSV data file ('-' for stdout)");
    };

    std::size_t samples = 100;
    std::uint64_t seed = 1;
    auto* check = app.add_subcommand("check-u", "verify the CompositeU gate expansion");
    check->add_option("--samples", samples, "random angles")->capture_default_str();
    check->add_option("--seed", seed, "RNG seed")->capture_default_str();
    outputs(check, false);

    ChainOpts sim1;
    std::string input1 = "odd:1", input2 = "U:1,1", frame = "u1", engine = "subspace";
    auto* s1 = app.add_subcommand("simulate-1d", "propagate one excitation through (U1)^n");
    add_chain(s1, sim1, true);
    s1->add_option("--input", input1, "odd:x or even:x")->capture_default_str();
    s1->add_option("--frame", frame, "u1 or u1prime")->check(CLI::IsMember({"u1", "u1prime"}))->capture_default_str();
    s1->add_option("--engine", engine, "subspace or full")->check(CLI::IsMember({"subspace", "full"}))->capture_default_str();
    outputs(s1, true);

    PlaneOpts sim2;
    auto* s2 = app.add_subcommand("simulate-2d", "propagate one excitation through (U2)^n");
    add_plane(s2, sim2, true);
    s2->add_option("--input", input2, "U:x,y or D:x,y")->capture_default_str();
    s2->add_option("--engine", engine, "subspace or full")->check(CLI::IsMember({"subspace", "full"}))->capture_default_str();
    outputs(s2, true);

    ChainOpts w1o;
    std::size_t k1 = kDefaultKPoints1D;
    auto* w1 = app.add_subcommand("winding-1d", "winding numbers and bands of the chain");
    add_chain(w1, w1o, false);
    w1->add_option("--k-points", k1, "momentum grid")->capture_default_str();
    outputs(w1, true);

    PlaneOpts w2o;
    std::size_t k2 = kDefaultKPoints2D, t2 = kDefaultTPoints2D;
    auto* w2 = app.add_subcommand("winding-2d", "winding numbers of the square lattice");
    w2->add_option("--gamma", w2o.gamma, "x spin-orbit drive angle, units of pi");
    w2->add_option("--delta", w2o.delta, "y spin-orbit drive angle, units of pi");
    w2->add_option("--k-points", k2, "momentum grid per axis")->capture_default_str();
    w2->add_option("--t-points", t2, "time grid")->capture_default_str();
    outputs(w2, false);

    DiagramOpts dia;
    auto* pd = app.add_subcommand("phase-diagram", "sweep winding numbers over a parameter grid");
    pd->add_option("--kind", dia.kind, "1d (alpha, beta) or 2d (gamma, delta)")->check(CLI::IsMember({"1d", "2d"}))->capture_default_str();
    pd->add_option("--a-min", dia.a_min, "first axis lower bound, units of pi")->capture_default_str();
    pd->add_option("--a-max", dia.a_max, "first axis upper bound, units of pi")->capture_default_str();
    pd->add_option("--a-points", dia.a_points, "first axis cells")->capture_default_str();
    pd->add_option("--b-min", dia.b_min, "second axis lower bound, units of pi")->capture_default_str();
    pd->add_option("--b-max", dia.b_max, "second axis upper bound, units of pi")->capture_default_str();
    pd->add_option("--b-points", dia.b_points, "second axis cells")->capture_default_str();
    pd->add_option("--k-points", dia.k_points, "momentum grid (default 256 in 1d, 24 in 2d)");
    pd->add_option("--t-points", dia.t_points, "time grid, 2d only (default 24)");
    pd->add_option("--threads", threads, "workers (0 = all cores; default from TOPOCIRC_THREADS)");
    outputs(pd, true);

    ChainOpts mdo{.alpha = {}, .beta = {}, .sites = 81, .cycles = 1};
    std::size_t n_max = 20;
    auto* md = app.add_subcommand("mean-displacement", "time-averaged chiral displacement");
    add_chain(md, mdo, false);
    md->add_option("--n-max", n_max, "cycles to average")->capture_default_str();
    outputs(md, true);

    ChainOpts edo{.alpha = {}, .beta = {}, .sites = 20, .cycles = 1};
    std::string gap = "both";
    auto* ed = app.add_subcommand("edge-state", "closed-form edge states on the open chain");
    add_chain(ed, edo, false);
    ed->add_option("--gap", gap, "0, pi or both")->check(CLI::IsMember({"0", "pi", "both"}))->capture_default_str();
    outputs(ed, true);

    ModelOpts nro;
    NoiseOpts noise;
    auto* nr = app.add_subcommand("noisy-run", "shot-based simulation with gate and readout noise");
    add_model(nr, nro, true);
    nr->add_option("--p1", noise.p1, "single-qubit depolarizing probability")->capture_default_str();
    nr->add_option("--p2", noise.p2, "per-qubit depolarizing probability after CNOT")->capture_default_str();
    nr->add_option("--readout", noise.readout, "symmetric readout flip probability")->capture_default_str();
    nr->add_option("--readout-e-given-g", noise.e_given_g, "P(read e | g)");
    nr->add_option("--readout-g-given-e", noise.g_given_e, "P(read g | e)");
    nr->add_option("--shots", noise.shots, "shots")->capture_default_str();
    nr->add_option("--seed", noise.seed, "RNG seed")->capture_default_str();
    nr->add_option("--threads", threads, "workers (0 = all cores; default from TOPOCIRC_THREADS)");
    nr->add_flag("--mitigate", noise.mitigate, "add readout-mitigated marginals");
    outputs(nr, true);

    ModelOpts exo;
    std::string dialect = "qasm2";
    auto* ex = app.add_subcommand("export", "write the expanded circuit as OpenQASM 2.0 or Quil");
    add_model(ex, exo, false);
    ex->add_option("--dialect", dialect, "qasm2 or quil")->check(CLI::IsMember({"qasm2", "qasm", "quil"}))->capture_default_str();
    ex->add_option("-o,--output", json_path, "program file ('-' for stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        write_error(err, "usage", e.what(), 2);
        return 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Output o;
    if (sub == check) o = cmd_check_u(samples, seed);
    else if (sub == s1) o = cmd_simulate_1d(sim1, input1, frame, engine);
    else if (sub == s2) o = cmd_simulate_2d(sim2, input2, engine);
    else if (sub == w1) o = cmd_winding_1d(w1o, k1);
    else if (sub == w2) o = cmd_winding_2d(w2o, k2, t2);
    else if (sub == pd) o = cmd_phase_diagram(dia, threads);
    else if (sub == md) o = cmd_mean_displacement(mdo, n_max);
    else if (sub == ed) o = cmd_edge_state(edo, gap);
    else if (sub == nr) o = cmd_noisy_run(nro, noise, threads);
    else o = cmd_export(exo, dialect);

    if (o.program) {
        const std::string comment = *o.program == Dialect::QASM2 ? "// " : "# ";
        const json prov = provenance(recorded, name, o, "program");
        write_text(json_path, comment + kProvenanceTag + prov.dump() + "\n" + o.program_text, out);
        return o.status;
    }
    if (!csv_path.empty()) {
        const json prov = provenance(recorded, name, o, "csv");
        write_text(csv_path, "# " + std::string(kProvenanceTag) + prov.dump() + "\n" + o.csv, out);
    }
    if (!json_path.empty() || csv_path != "-") {
        if (json_path == "-" && csv_path == "-") throw UsageError("-o and --csv cannot both be stdout");
        const json doc{{"provenance", provenance(recorded, name, o, "json")}, {"result", o.result}};
        write_text(json_path, doc.dump(2) + "\n", out);
    }
    return o.status;
}

bool is_usage_kind(const std::string& kind) {
    return kind == "invalid_argument" || kind == "index_out_of_range" || kind == "unexpanded_macro";
}

}  // namespace

KeyValues parse_config(std::string_view text) {
    KeyValues kv;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(std::string_view(t).substr(0, eq));
        while (key.starts_with('-')) key.erase(0, 1);
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty() || value.empty())
            throw UsageError("config line " + std::to_string(line_no) + ": empty key or value");
        kv.emplace_back(std::move(key), value);
    }
    return kv;
}

KeyValues read_config(const std::string& path) { return parse_config(read_file(path)); }

NoiseModel noise_model_from_config(const KeyValues& kv) {
    NoiseModel m;
    std::optional<double> eg, ge;
    double readout = m.readout.front().p_e_given_g;
    const auto real = [](const std::string& k, const std::string& v) {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used == v.size()) return d;
        } catch (const std::exception&) {
        }
        throw UsageError("bad value for " + k + ": '" + v + "'");
    };
    for (const auto& [k, v] : kv) {
        if (k == "p1") m.p1 = real(k, v);
        else if (k == "p2") m.p2 = real(k, v);
        else if (k == "readout") readout = real(k, v);
        else if (k == "readout-e-given-g") eg = real(k, v);
        else if (k == "readout-g-given-e") ge = real(k, v);
        else if (k == "shots") m.shots = parse_count(v, "shots");
        else if (k == "seed") m.seed = parse_count(v, "seed");
    }
    m.readout = {ReadoutError{eg.value_or(readout), ge.value_or(readout)}};
    return m;
}

Qubit parse_input_1d(std::string_view spec, std::size_t sites) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw UsageError("input must be odd:x or even:x");
    const std::string_view kind = spec.substr(0, colon);
    if (kind != "odd" && kind != "even") throw UsageError("input must be odd:x or even:x");
    const std::size_t x = parse_count(spec.substr(colon + 1), "site index");
    if (x < 1 || x > sites)
        throw UsageError("site " + std::to_string(x) + " outside 1.." + std::to_string(sites));
    return LatticeMap1D(sites).qubit(x, kind == "odd" ? Spin::Up : Spin::Down);
}

Qubit parse_input_2d(std::string_view spec, std::size_t nx, std::size_t ny) {
    const auto colon = spec.find(':');
    const auto comma = spec.find(',');
    if (colon == std::string_view::npos || comma == std::string_view::npos || comma < colon)
        throw UsageError("input must be U:x,y or D:x,y");
    const std::string_view kind = spec.substr(0, colon);
    if (kind != "U" && kind != "D") throw UsageError("input must be U:x,y or D:x,y");
    const std::size_t x = parse_count(spec.substr(colon + 1, comma - colon - 1), "x");
    const std::size_t y = parse_count(spec.substr(comma + 1), "y");
    if (x < 1 || x > nx || y < 1 || y > ny) throw UsageError("site outside the lattice");
    return LatticeMap2D(nx, ny).qubit(x, y, kind == "U" ? Spin::Up : Spin::Down);
}

std::size_t default_threads() {
    const char* v = std::getenv("TOPOCIRC_THREADS");
    if (!v || !*v) return 0;
    return parse_count(v, "TOPOCIRC_THREADS");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) {
            std::string list;
            for (const auto& c : kCommands) list += (list.empty() ? "" : ", ") + c;
            throw UsageError("missing subcommand; one of: " + list);
        }
        if (args.front() == "--replay" || args.front().starts_with("--replay=")) {
            std::vector<std::string> a = args;
            if (a.front() != "--replay") {
                a.insert(a.begin() + 1, a.front().substr(9));
                a.front() = "--replay";
            }
            return replay(std::move(a), out, err);
        }
        return dispatch(args, out, err);
    } catch (const UsageError& e) {
        write_error(err, "usage", e.what(), 2);
        return 2;
    } catch (const ParseError& e) {
        write_error(err, e.kind(), e.what(), 2, {{"line", e.line()}, {"column", e.column()}});
        return 2;
    } catch (const Error& e) {
        const int code = is_usage_kind(e.kind()) ? 2 : 1;
        write_error(err, e.kind(), e.what(), code);
        return code;
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what(), 1);
        return 1;
    }
}

}  // namespace topo::cli
