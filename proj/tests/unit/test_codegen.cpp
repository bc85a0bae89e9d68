#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "topocirc/codegen.hpp"
#include "topocirc/engine.hpp"
#include "topocirc/errors.hpp"
#include "topocirc/floquet.hpp"

using namespace topo;
using topo::test::kPi;

namespace {

std::size_t count_lines_starting(const std::string& text, std::initializer_list<std::string_view> heads) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        for (std::string_view h : heads)
            if (line.rfind(h, 0) == 0) {
                ++n;
                break;
            }
    return n;
}

std::size_t gate_statements(const std::string& qasm) { return count_lines_starting(qasm, {"ry(", "rz(", "cx "}); }

// Set TOPOCIRC_UPDATE_GOLDEN=1 to rewrite the files; otherwise they are compared byte for byte.
void check_golden(const std::string& name, const std::string& text) {
    const std::string path = std::string(TOPOCIRC_GOLDEN_DIR) + "/" + name;
    if (const char* u = std::getenv("TOPOCIRC_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(path, std::ios::binary) << text;
        return;
    }
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK_MESSAGE(ss.str() == text, "golden mismatch: " << name);
}

void check_equivalent(const Circuit& a, const Circuit& b, std::mt19937_64& rng) {
    REQUIRE(a.num_qubits() == b.num_qubits());
    const std::size_t n = a.num_qubits();
    // Every single-excitation input plus one random dense state.
    for (std::size_t q = 0; q <= n; ++q) {
        StateVector x = q < n ? StateVector::single_excitation(n, q)
                              : StateVector(n, test::random_unit_vector(std::size_t{1} << n, rng));
        StateVector y = x;
        apply_circuit(x, a);
        apply_circuit(y, b);
        CHECK(test::max_abs_diff(x.amplitudes(), y.amplitudes()) < 1e-12);
    }
}

}  // namespace

TEST_CASE("emit: empty one-qubit circuit") {
    const EmittedProgram p = emit(Circuit(1), Dialect::QASM2);
    CHECK(p.text ==
          "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n");
    CHECK(p.gate_count == 0);
    CHECK(p.qubit_count == 1);
    CHECK(emit(Circuit(1), Dialect::Quil).text == "DECLARE ro BIT[1]\nMEASURE 0 ro[0]\n");
}

TEST_CASE("emit: one CompositeU is four CNOTs and four rotations") {
    Circuit c(2);
    c.add_gate(composite_u(kPi / 2, 0, 1));
    CHECK_THROWS_AS(emit(c, Dialect::QASM2), UnexpandedMacro);
    const Circuit e = c.expanded();
    const EmittedProgram q = emit(e, Dialect::QASM2);
    CHECK(q.gate_count == 8);
    CHECK(gate_statements(q.text) == 8);
    CHECK(count_lines_starting(q.text, {"cx "}) == 4);
    const EmittedProgram l = emit(e, Dialect::Quil);
    CHECK(count_lines_starting(l.text, {"CNOT "}) == 4);
    CHECK(count_lines_starting(l.text, {"RY(", "RZ("}) == 4);
    CHECK(count_lines_starting(l.text, {"MEASURE "}) == 2);
    check_golden("composite_half_pi.qasm", q.text);
    check_golden("composite_half_pi.quil", l.text);
}

TEST_CASE("emit: (U1)^3 on four sites") {
    const Circuit c = build_u1_circuit({kPi, 1.9 * kPi, 4, 3}).expanded();
    const EmittedProgram q = emit(c, Dialect::QASM2);
    CHECK(q.gate_count == 264);
    CHECK(gate_statements(q.text) == 264);
    CHECK(count_lines_starting(q.text, {"measure "}) == 8);
    check_golden("u1_n4_x3.qasm", q.text);
    check_golden("u1_n4_x3.quil", emit(c, Dialect::Quil).text);
}

TEST_CASE("emit: one U1 cycle costs eight gates per macro, 8(3N-1)") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const EmittedProgram p = emit(build_u1_cycle({0.3, 1.2, n, 1}).expanded(), Dialect::QASM2);
        CHECK(gate_statements(p.text) == 8 * (3 * n - 1));
    }
}

TEST_CASE("emit: byte-deterministic, LF only, 17 significant digits") {
    const Circuit c = build_u2_circuit({0.7 * kPi, 0.3 * kPi, 2, 2, 1}).expanded();
    const std::string a = emit(c, Dialect::QASM2).text;
    CHECK(a == emit(c, Dialect::QASM2).text);
    CHECK(a.find('\r') == std::string::npos);
    check_golden("u2_2x2.qasm", a);

    Circuit one(1);
    one.add_gate(ry(0.1, 0));
    const std::string t = emit(one, Dialect::QASM2).text;
    CHECK(t.find("ry(0.10000000000000001) q[0];") != std::string::npos);
    const Circuit back = parse_qasm(t);
    CHECK(back.layers()[0][0].angle == 0.1);
}

TEST_CASE("parse_qasm: emit round trip is simulation-equivalent") {
    std::mt19937_64 rng(99);
    for (std::size_t n = 2; n <= 4; ++n) {
        const Circuit c = build_u1_circuit({1.3 * kPi, 0.7 * kPi, n, 2}).expanded();
        const Circuit back = parse_qasm(emit(c, Dialect::QASM2).text);
        CHECK(back.gate_count() == c.gate_count());
        check_equivalent(c, back, rng);
    }
    const Circuit u2 = build_u2_circuit({1.9 * kPi, 0.8 * kPi, 2, 2, 1}).expanded();
    check_equivalent(u2, parse_qasm(emit(u2, Dialect::QASM2).text), rng);
}

TEST_CASE("parse_qasm: layering packs disjoint gates") {
    const Circuit c = parse_qasm(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"
        "ry(0.5) q[0]; rz(1) q[2];\ncx q[0],q[1];\nrz(2) q[2];\n");
    CHECK(c.num_qubits() == 3);
    CHECK(c.gate_count() == 4);
    CHECK(c.layers().size() == 2);
}

TEST_CASE("parse_qasm: header-only and empty programs") {
    const Circuit c = parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n// nothing\n");
    CHECK(c.num_qubits() == 2);
    CHECK(c.gate_count() == 0);
    CHECK(parse_qasm("").num_qubits() == 0);
}

TEST_CASE("parse_qasm: diagnostics carry line and column") {
    try {
        parse_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == "unsupported_statement");
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
    }
    try {
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nry(0.1 q[0];\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == "malformed_syntax");
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
    try {
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\n\ncx q[0],q[5];\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == "index_out_of_range");
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nry(0.1) q[0]\n"), ParseError);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 3.0;\n"), ParseError);
}

TEST_CASE("parse_dialect") {
    CHECK(parse_dialect("qasm2") == Dialect::QASM2);
    CHECK(parse_dialect("quil") == Dialect::Quil);
    CHECK(to_string(Dialect::Quil) == "quil");
    CHECK_THROWS_AS(parse_dialect("qasm3"), InvalidArgument);
}
