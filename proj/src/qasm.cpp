#include "qprop/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace qprop {

namespace {

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << c.num_qubits() << "];\n";
    os << "creg c[" << c.num_qubits() << "];\n";
    for (const auto& op : c.ops()) {
        if (const Gate* g = std::get_if<Gate>(&op)) {
            os << gate_name(g->kind);
            if (!g->params.empty()) {
                os << '(';
                for (std::size_t i = 0; i < g->params.size(); ++i) {
                    if (i)
                        os << ',';
                    os << format_angle(g->params[i]);
                }
                os << ')';
            }
            os << ' ';
            for (std::size_t i = 0; i < g->qubits.size(); ++i) {
                if (i)
                    os << ',';
                os << "q[" << g->qubits[i] << ']';
            }
            os << ";\n";
        } else if (std::holds_alternative<InitializeOp>(op)) {
            throw std::invalid_argument(
                "to_qasm: circuit contains state initialization, which the QASM 2.0 "
                "subset cannot express");
        } else {
            const MeasureOp& m = std::get<MeasureOp>(op);
            if (m.basis != Basis::Z)
                throw std::invalid_argument(
                    "to_qasm: non-Z measurement basis; insert basis-change gates first");
            os << "measure q[" << m.qubit << "] -> c[" << m.cbit << "];\n";
        }
    }
    return os.str();
}

namespace {

// Recursive-descent scanner/parser over the full source text, tracking line
// and column for diagnostics.
class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Circuit parse() {
        expect_keyword("OPENQASM");
        if (read_token() != "2.0")
            fail("expected version 2.0");
        expect(';');
        skip_ws();
        if (peek_keyword("include")) {
            expect_keyword("include");
            skip_ws();
            read_string_literal();
            expect(';');
        }
        expect_keyword("qreg");
        auto [qname, qsize] = read_register_decl();
        expect(';');
        if (qsize < 1)
            fail("quantum register must have at least one qubit");
        qreg_name_ = qname;
        std::optional<Circuit> circuit(Circuit(static_cast<int>(qsize)));

        skip_ws();
        if (peek_keyword("creg")) {
            expect_keyword("creg");
            auto [cname, csize] = read_register_decl();
            expect(';');
            creg_name_ = cname;
            creg_size_ = csize;
        }

        skip_ws();
        while (!at_end()) {
            parse_statement(*circuit);
            skip_ws();
        }
        return *circuit;
    }

private:
    static const std::map<std::string, GateKind>& gate_table() {
        static const std::map<std::string, GateKind> table = {
            {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},
            {"z", GateKind::Z},     {"s", GateKind::S},     {"sdg", GateKind::Sdg},
            {"t", GateKind::T},     {"tdg", GateKind::Tdg}, {"rx", GateKind::RX},
            {"ry", GateKind::RY},   {"rz", GateKind::RZ},   {"u1", GateKind::P},
            {"u3", GateKind::U},    {"cx", GateKind::CX},   {"cz", GateKind::CZ},
            {"swap", GateKind::SWAP}, {"cu1", GateKind::CP}, {"ccx", GateKind::CCX},
        };
        return table;
    }

    void parse_statement(Circuit& circuit) {
        const int line = line_, col = col_;
        const std::string word = read_identifier();
        if (word == "measure") {
            const int q = read_indexed_ref(qreg_name_);
            skip_ws();
            if (!(consume('-') && consume('>')))
                fail("expected '->' in measure statement");
            if (creg_name_.empty())
                fail("measure statement requires a classical register");
            const int cb = read_indexed_ref(creg_name_);
            if (cb >= static_cast<long>(creg_size_))
                fail("classical bit index out of range");
            expect(';');
            try {
                circuit = circuit.with_measure(q, Basis::Z, cb);
            } catch (const std::invalid_argument& e) {
                fail_at(line, col, e.what());
            }
            return;
        }

        const auto it = gate_table().find(word);
        if (it == gate_table().end())
            fail_at(line, col, "unsupported statement '" + word + "'");
        const GateKind kind = it->second;

        std::vector<double> params;
        skip_ws();
        if (peek() == '(') {
            get();
            for (;;) {
                params.push_back(parse_expr());
                skip_ws();
                if (consume(','))
                    continue;
                expect(')');
                break;
            }
        }
        std::vector<int> qubits;
        for (;;) {
            qubits.push_back(read_indexed_ref(qreg_name_));
            skip_ws();
            if (consume(','))
                continue;
            expect(';');
            break;
        }
        try {
            circuit = circuit.with_gate(Gate{kind, std::move(params), std::move(qubits)});
        } catch (const std::invalid_argument& e) {
            fail_at(line, col, e.what());
        }
    }

    // expr := term (('+'|'-') term)*
    double parse_expr() {
        double v = parse_term();
        for (;;) {
            skip_ws();
            if (consume('+'))
                v += parse_term();
            else if (consume('-'))
                v -= parse_term();
            else
                return v;
        }
    }

    double parse_term() {
        double v = parse_factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                v *= parse_factor();
            } else if (consume('/')) {
                const double d = parse_factor();
                if (d == 0.0)
                    fail("division by zero in angle expression");
                v /= d;
            } else {
                return v;
            }
        }
    }

    double parse_factor() {
        skip_ws();
        if (consume('-'))
            return -parse_factor();
        if (consume('+'))
            return parse_factor();
        if (consume('(')) {
            const double v = parse_expr();
            expect(')');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
            const int line = line_, col = col_;
            const std::string word = read_identifier();
            if (word == "pi")
                return M_PI;
            fail_at(line, col, "unknown symbol '" + word + "' in angle expression");
        }
        return read_number();
    }

    std::pair<std::string, long> read_register_decl() {
        skip_ws();
        const std::string name = read_identifier();
        expect('[');
        const long size = read_integer();
        expect(']');
        return {name, size};
    }

    int read_indexed_ref(const std::string& expected_name) {
        skip_ws();
        const int line = line_, col = col_;
        const std::string name = read_identifier();
        if (name != expected_name)
            fail_at(line, col, "unknown register '" + name + "'");
        expect('[');
        const long idx = read_integer();
        expect(']');
        return static_cast<int>(idx);
    }

    // --- low-level scanning -------------------------------------------------

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char get() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool consume(char c) {
        skip_ws();
        if (peek() != c)
            return false;
        get();
        return true;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        get();
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    std::string read_identifier() {
        skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            fail("expected identifier");
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            out += get();
        return out;
    }

    std::string read_token() {
        skip_ws();
        std::string out;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(peek())) &&
               peek() != ';')
            out += get();
        return out;
    }

    std::string read_string_literal() {
        skip_ws();
        if (peek() != '"')
            fail("expected string literal");
        get();
        std::string out;
        while (peek() != '"' && pos_ < text_.size())
            out += get();
        if (peek() != '"')
            fail("unterminated string literal");
        get();
        return out;
    }

    long read_integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > 1'000'000)
                fail("integer too large");
        }
        return v;
    }

    double read_number() {
        skip_ws();
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
               peek() == 'e' || peek() == 'E' ||
               ((peek() == '+' || peek() == '-') && pos_ > start &&
                (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))
            get();
        if (pos_ == start)
            fail_at(line, col, "expected number");
        const std::string token = text_.substr(start, pos_ - start);
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size())
                fail_at(line, col, "malformed number '" + token + "'");
            return v;
        } catch (const std::logic_error&) {
            fail_at(line, col, "malformed number '" + token + "'");
        }
        return 0.0; // unreachable
    }

    void expect_keyword(const std::string& kw) {
        skip_ws();
        const int line = line_, col = col_;
        const std::string word = read_identifier();
        if (word != kw)
            fail_at(line, col, "expected '" + kw + "'");
    }

    bool peek_keyword(const std::string& kw) {
        skip_ws();
        return text_.compare(pos_, kw.size(), kw) == 0;
    }

    [[noreturn]] void fail(const std::string& message) { fail_at(line_, col_, message); }

    [[noreturn]] void fail_at(int line, int col, const std::string& message) {
        throw QasmParseError(line, col, message);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string qreg_name_;
    std::string creg_name_;
    long creg_size_ = 0;
};

} // namespace

Circuit from_qasm(const std::string& text) {
    return Parser(text).parse();
}

} // namespace qprop
