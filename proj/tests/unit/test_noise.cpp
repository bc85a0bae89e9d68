#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "test_helpers.hpp"
#include "topocirc/engine.hpp"
#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"
#include "topocirc/noise.hpp"

using namespace topo;
using topo::test::kPi;

namespace {

// The edge-localizing configuration: α = π, β = 1.9π, N = 4, three cycles.
Circuit edge_circuit() { return build_u1_circuit({kPi, 1.9 * kPi, 4, 3}); }

NoiseModel quiet(std::size_t shots, std::uint64_t seed) { return NoiseModel::ideal(shots, seed); }

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double sem(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1) / v.size());
}

}  // namespace

TEST_CASE("bitstring: qubit 0 is the rightmost character") {
    CHECK(bitstring(1, 4) == "0001");
    CHECK(bitstring(0b1010, 4) == "1010");
    CHECK(bitstring(0, 1) == "0");
}

TEST_CASE("NoiseModel: defaults and validation") {
    const NoiseModel m;
    CHECK(m.p1 == 1e-3);
    CHECK(m.p2 == 1e-2);
    CHECK(m.shots == 8192);
    CHECK(m.readout_for(5).p_e_given_g == 0.03);
    CHECK_NOTHROW(m.validate(8));

    NoiseModel bad = m;
    bad.p1 = 1.5;
    CHECK_THROWS_AS(bad.validate(2), InvalidArgument);
    bad = m;
    bad.shots = 0;
    CHECK_THROWS_AS(bad.validate(2), InvalidArgument);
    bad = m;
    bad.readout = {ReadoutError{}, ReadoutError{}};
    CHECK_THROWS_AS(bad.validate(3), InvalidArgument);
    CHECK_NOTHROW(bad.validate(2));
    bad.readout[1].p_g_given_e = -0.1;
    CHECK_THROWS_AS(bad.validate(2), InvalidArgument);

    const NoiseModel ideal = NoiseModel::ideal(100, 9);
    CHECK(ideal.p1 == 0.0);
    CHECK(ideal.p2 == 0.0);
    CHECK(ideal.readout_for(0).p_g_given_e == 0.0);
}

TEST_CASE("run_noisy: guards") {
    CHECK_THROWS_AS(run_noisy(Circuit(25), StateVector(25), quiet(10, 1)), GuardViolation);
    CHECK_THROWS_AS(run_noisy(Circuit(3), StateVector(4), quiet(10, 1)), InvalidArgument);
}

TEST_CASE("run_noisy: counts sum to shots and are seed-deterministic") {
    const Circuit c = edge_circuit();
    const StateVector in = StateVector::single_excitation(8, 0);
    NoiseModel m;
    m.shots = 2000;
    m.seed = 42;
    const MeasurementRecord a = run_noisy(c, in, m);
    const MeasurementRecord b = run_noisy(c, in, m);
    CHECK(a.counts == b.counts);
    std::size_t total = 0;
    for (const auto& [k, n] : a.counts) {
        CHECK(k.size() == 8);
        total += n;
    }
    CHECK(total == 2000);
    m.seed = 43;
    CHECK(run_noisy(c, in, m).counts != a.counts);
}

TEST_CASE("run_noisy: thread count does not change the record") {
    const Circuit c = edge_circuit();
    const StateVector in = StateVector::single_excitation(8, 1);
    NoiseModel m;
    m.shots = 600;
    m.seed = 5;
    const auto one = run_noisy(c, in, m, 1);
    CHECK(run_noisy(c, in, m, 3).counts == one.counts);
    CHECK(run_noisy(c, in, m, 0).counts == one.counts);
}

TEST_CASE("run_noisy: noise-free limit converges to the exact distribution") {
    const Circuit c = edge_circuit();
    StateVector exact = StateVector::single_excitation(8, 0);
    apply_circuit(exact, c);
    const MeasurementRecord r = run_noisy(c, StateVector::single_excitation(8, 0), quiet(8192, 3));

    double tv = 0.0;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < exact.dim(); ++i) {
        const double p = std::norm(exact[i]);
        const auto it = r.counts.find(bitstring(i, 8));
        const double f = it == r.counts.end() ? 0.0 : double(it->second) / r.shots;
        if (it != r.counts.end()) seen += it->second;
        tv += std::abs(p - f);
    }
    CHECK(seen == r.shots);
    CHECK(tv / 2 < 0.05);

    // Per-qubit marginals within 3σ of the noiseless distribution.
    const auto ideal = excitation_distribution(exact);
    const auto f = r.frequencies();
    for (std::size_t q = 0; q < 8; ++q) {
        const double sigma = std::sqrt(std::max(ideal[q] * (1 - ideal[q]), 1e-6) / r.shots);
        CHECK(std::abs(f[q] - ideal[q]) <= 3 * sigma + 1e-12);
    }
}

TEST_CASE("run_noisy: certain readout flips complement every bit") {
    Circuit c(3);
    c.add_gate(composite_u(kPi / 2, 0, 1));
    NoiseModel m = quiet(300, 2);
    m.readout = {ReadoutError{1.0, 1.0}};
    const MeasurementRecord r = run_noisy(c, StateVector::single_excitation(3, 0), m);
    REQUIRE(r.counts.size() == 1);
    CHECK(r.counts.begin()->first == "101");  // ideal outcome 010, complemented
    CHECK(r.frequencies() == std::vector<double>{1.0, 0.0, 1.0});
}

TEST_CASE("MeasurementRecord: frequencies and binomial standard errors") {
    MeasurementRecord r;
    r.num_qubits = 2;
    r.shots = 100;
    r.counts = {{"01", 75}, {"10", 25}};
    const auto f = r.frequencies();
    CHECK(f[0] == doctest::Approx(0.75));
    CHECK(f[1] == doctest::Approx(0.25));
    const auto se = r.standard_errors();
    CHECK(se[0] == doctest::Approx(std::sqrt(0.75 * 0.25 / 100)));
}

TEST_CASE("readout_mitigate: exact inversion of injected flips") {
    MeasurementRecord r;
    r.num_qubits = 1;
    r.shots = 10000;
    // True p(e) = 0.2 seen through 3% symmetric flips: 0.2·0.97 + 0.8·0.03 = 0.218.
    r.counts = {{"1", 2180}, {"0", 7820}};
    NoiseModel m = quiet(10000, 1);
    m.readout = {ReadoutError{0.03, 0.03}};
    CHECK(readout_mitigate(r, m)[0] == doctest::Approx(0.2).epsilon(1e-12));

    // Ideal readout is the identity.
    m.readout = {};
    CHECK(readout_mitigate(r, m)[0] == doctest::Approx(0.218));

    // Clipping.
    r.counts = {{"0", 10000}};
    m.readout = {ReadoutError{0.03, 0.03}};
    CHECK(readout_mitigate(r, m)[0] == 0.0);

    m.readout = {ReadoutError{0.5, 0.5}};
    CHECK_THROWS_AS(readout_mitigate(r, m), SingularMatrix);
}

TEST_CASE("readout_mitigate: recovers the noiseless marginals within 3σ") {
    const Circuit c = edge_circuit();
    const StateVector in = StateVector::single_excitation(8, 0);
    StateVector exact = in;
    apply_circuit(exact, c);
    const auto ideal = excitation_distribution(exact);

    NoiseModel m = quiet(8192, 11);
    m.readout = {ReadoutError{0.03, 0.03}};
    const auto r = run_noisy(c, in, m);
    const auto fixed = readout_mitigate(r, m);
    for (std::size_t q = 0; q < 8; ++q) {
        // Inversion scales the binomial error by 1/(1 - 0.06).
        const double f = 0.03 + 0.94 * ideal[q];
        const double sigma = std::sqrt(f * (1 - f) / r.shots) / 0.94;
        CHECK(std::abs(fixed[q] - ideal[q]) <= 3 * sigma);
    }
}

TEST_CASE("run_noisy: edge localization survives the default model") {
    const auto r = run_noisy(edge_circuit(), StateVector::single_excitation(8, 0), NoiseModel{});
    const auto f = r.frequencies();
    CHECK(std::max_element(f.begin(), f.end()) - f.begin() == 0);
}

TEST_CASE("run_noisy: argmax probability does not increase with p2 (32 seeds, 3σ)") {
    const Circuit c = edge_circuit();
    const StateVector in = StateVector::single_excitation(8, 0);
    std::vector<double> prev_samples;
    for (double p2 : {0.0, 0.01, 0.03, 0.1}) {
        std::vector<double> samples;
        for (std::uint64_t seed = 1; seed <= 32; ++seed) {
            NoiseModel m;
            m.p2 = p2;
            m.shots = 512;
            m.seed = seed;
            samples.push_back(run_noisy(c, in, m).frequencies()[0]);
        }
        if (!prev_samples.empty()) {
            const double tol = 3 * std::hypot(sem(samples), sem(prev_samples));
            CAPTURE(p2);
            CHECK(mean(samples) <= mean(prev_samples) + tol);
        }
        prev_samples = std::move(samples);
    }
}
