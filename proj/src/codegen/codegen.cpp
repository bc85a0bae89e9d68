#include "topocirc/codegen.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <vector>

#include "topocirc/errors.hpp"

namespace topo {

namespace {

std::string angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_qasm_gate(std::string& out, const Gate& g) {
    switch (g.kind) {
        case GateKind::RY:
            out += "ry(" + angle(g.angle) + ") q[" + std::to_string(g.q0) + "];\n";
            break;
        case GateKind::RZ:
            out += "rz(" + angle(g.angle) + ") q[" + std::to_string(g.q0) + "];\n";
            break;
        case GateKind::CNOT:
            out += "cx q[" + std::to_string(g.q0) + "],q[" + std::to_string(g.q1) + "];\n";
            break;
        case GateKind::CompositeU: break;
    }
}

void emit_quil_gate(std::string& out, const Gate& g) {
    switch (g.kind) {
        case GateKind::RY: out += "RY(" + angle(g.angle) + ") " + std::to_string(g.q0) + "\n"; break;
        case GateKind::RZ: out += "RZ(" + angle(g.angle) + ") " + std::to_string(g.q0) + "\n"; break;
        case GateKind::CNOT:
            out += "CNOT " + std::to_string(g.q0) + " " + std::to_string(g.q1) + "\n";
            break;
        case GateKind::CompositeU: break;
    }
}

// Cursor over one statement with 1-based columns for diagnostics.
class Cursor {
public:
    Cursor(std::string_view s, std::size_t line, std::size_t col0) : s_(s), line_(line), col0_(col0) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::string identifier() {
        skip_ws();
        const std::size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        if (i_ == start) fail("expected identifier");
        return std::string(s_.substr(start, i_ - start));
    }
    std::size_t integer() {
        skip_ws();
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("expected integer");
        i_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }
    double number() {
        skip_ws();
        double v = 0.0;
        auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("expected numeric angle");
        i_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }
    [[noreturn]] void fail(const std::string& msg, std::string kind = "malformed_syntax") const {
        throw ParseError(std::move(kind), msg, line_, col0_ + i_);
    }
    std::size_t column() const { return col0_ + i_; }

private:
    std::string_view s_;
    std::size_t line_;
    std::size_t col0_;
    std::size_t i_ = 0;
};

// Greedy layering: each gate lands right after the last layer touching its qubits.
class LayerPacker {
public:
    void set_qubits(std::size_t n) { depth_.assign(n, 0); }
    void add(const Gate& g) {
        std::size_t d = depth_[g.q0];
        if (g.is_two_qubit()) d = std::max(d, depth_[g.q1]);
        if (d == layers_.size()) layers_.emplace_back();
        layers_[d].push_back(g);
        depth_[g.q0] = d + 1;
        if (g.is_two_qubit()) depth_[g.q1] = d + 1;
    }
    Circuit finish() {
        Circuit c(depth_.size());
        for (auto& l : layers_) c.add_layer(std::move(l));
        return c;
    }

private:
    std::vector<std::size_t> depth_;
    std::vector<Layer> layers_;
};

}  // namespace

std::string to_string(Dialect d) { return d == Dialect::QASM2 ? "qasm2" : "quil"; }

Dialect parse_dialect(std::string_view name) {
    if (name == "qasm2" || name == "qasm") return Dialect::QASM2;
    if (name == "quil") return Dialect::Quil;
    throw InvalidArgument("unknown dialect '" + std::string(name) + "'");
}

EmittedProgram emit(const Circuit& circuit, Dialect dialect) {
    if (circuit.has_macros()) {
        throw UnexpandedMacro("expand CompositeU gates before emitting");
    }
    EmittedProgram p;
    p.dialect = dialect;
    p.qubit_count = circuit.num_qubits();
    p.gate_count = circuit.gate_count();
    const std::string n = std::to_string(circuit.num_qubits());
    std::string& out = p.text;
    if (dialect == Dialect::QASM2) {
        out += "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
        out += "qreg q[" + n + "];\ncreg c[" + n + "];\n";
        for (const Layer& l : circuit.layers())
            for (const Gate& g : l) emit_qasm_gate(out, g);
        for (std::size_t q = 0; q < circuit.num_qubits(); ++q) {
            const std::string i = std::to_string(q);
            out += "measure q[" + i + "] -> c[" + i + "];\n";
        }
    } else {
        out += "DECLARE ro BIT[" + n + "]\n";
        for (const Layer& l : circuit.layers())
            for (const Gate& g : l) emit_quil_gate(out, g);
        for (std::size_t q = 0; q < circuit.num_qubits(); ++q) {
            const std::string i = std::to_string(q);
            out += "MEASURE " + i + " ro[" + i + "]\n";
        }
    }
    return p;
}

Circuit parse_qasm(std::string_view text) {
    std::optional<std::size_t> num_qubits;
    std::string qreg_name;
    LayerPacker packer;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;

        if (auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        // Statements end in ';' and may share a line.
        std::size_t spos = 0;
        while (spos < line.size()) {
            std::size_t semi = line.find(';', spos);
            std::string_view stmt = line.substr(spos, semi == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : semi - spos);
            Cursor cur(stmt, line_no, spos + 1);
            if (cur.done()) {
                if (semi == std::string_view::npos) break;
                spos = semi + 1;
                continue;
            }
            if (semi == std::string_view::npos) cur.fail("missing ';'");

            auto qubit_arg = [&](Cursor& cc) {
                const std::string reg = cc.identifier();
                if (!num_qubits || reg != qreg_name) cc.fail("unknown register '" + reg + "'");
                cc.expect("[");
                const std::size_t q = cc.integer();
                if (q >= *num_qubits) cc.fail("qubit index out of range", "index_out_of_range");
                cc.expect("]");
                return q;
            };

            const std::string word = cur.identifier();
            if (word == "OPENQASM") {
                if (cur.number() != 2.0) cur.fail("only OPENQASM 2.0 is supported");
            } else if (word == "include") {
                cur.expect("\"");
                while (!cur.accept("\"")) {
                    if (cur.done()) cur.fail("unterminated include");
                    cur.identifier();
                    cur.accept(".");
                }
            } else if (word == "qreg") {
                if (num_qubits) cur.fail("only one qreg is supported", "unsupported_statement");
                qreg_name = cur.identifier();
                cur.expect("[");
                num_qubits = cur.integer();
                cur.expect("]");
                packer.set_qubits(*num_qubits);
            } else if (word == "creg") {
                cur.identifier();
                cur.expect("[");
                cur.integer();
                cur.expect("]");
            } else if (word == "ry" || word == "rz") {
                cur.expect("(");
                const double a = cur.number();
                cur.expect(")");
                const Qubit q = qubit_arg(cur);
                packer.add(word == "ry" ? ry(a, q) : rz(a, q));
            } else if (word == "cx") {
                const Qubit c = qubit_arg(cur);
                cur.expect(",");
                const Qubit t = qubit_arg(cur);
                if (c == t) cur.fail("cx control equals target");
                packer.add(cnot(c, t));
            } else if (word == "measure") {
                qubit_arg(cur);
                cur.expect("->");
                cur.identifier();
                cur.expect("[");
                cur.integer();
                cur.expect("]");
            } else {
                throw ParseError("unsupported_statement", "unsupported statement '" + word + "'",
                                 line_no, spos + 1 + stmt.find_first_not_of(" \t"));
            }
            if (!cur.done()) cur.fail("unexpected trailing text");
            spos = semi + 1;
        }
        if (eol == text.size()) break;
    }
    if (!num_qubits) return Circuit(0);
    return packer.finish();
}

}  // namespace topo
