#include "doctest.h"

#include <cmath>

#include "qprop/mutation.hpp"
#include "qprop/qasm.hpp"

using namespace qprop;

TEST_CASE("bell circuit serializes to the expected statements") {
    const Circuit bell = Circuit(2).h(0).cx(0, 1);
    const std::string text = to_qasm(bell);
    CHECK(text.find("OPENQASM 2.0;") == 0);
    CHECK(text.find("include \"qelib1.inc\";") != std::string::npos);
    CHECK(text.find("qreg q[2];") != std::string::npos);
    CHECK(text.find("h q[0];") != std::string::npos);
    CHECK(text.find("cx q[0],q[1];") != std::string::npos);
}

TEST_CASE("round trip preserves the canonical hash") {
    Circuit c = Circuit(3)
                    .h(0)
                    .u(0.1, 2.2, -0.3, 1)
                    .p(1.0 / 3.0, 2)
                    .cp(M_PI / 7, 0, 2)
                    .swap(1, 2)
                    .ccx(0, 1, 2)
                    .rx(0.12345678901234567, 0)
                    .with_measure(2, Basis::Z, 2);
    const Circuit back = from_qasm(to_qasm(c));
    CHECK(canonical_hash(back) == canonical_hash(c));
    CHECK(back == c);
}

TEST_CASE("initialize and non-Z measurement are rejected on export") {
    const Circuit with_init =
        Circuit(1).with_initialize(StateVector::basis_state(1, 0), {0});
    CHECK_THROWS_AS(to_qasm(with_init), std::invalid_argument);

    const Circuit non_z = Circuit(1).with_measure(0, Basis::X, 0);
    CHECK_THROWS_AS(to_qasm(non_z), std::invalid_argument);
}

TEST_CASE("angle expressions") {
    const Circuit c = from_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n"
                                "rx(pi/2) q[0];\nrz(-pi) q[0];\nu1(2*pi/3) q[0];\n"
                                "ry(1.5e-3) q[0];\nu3(pi/4,0,-(pi/8)) q[0];\n");
    const Gate& rx = std::get<Gate>(c.ops()[0]);
    CHECK(rx.params[0] == doctest::Approx(M_PI / 2));
    const Gate& rz = std::get<Gate>(c.ops()[1]);
    CHECK(rz.params[0] == doctest::Approx(-M_PI));
    const Gate& u1 = std::get<Gate>(c.ops()[2]);
    CHECK(u1.params[0] == doctest::Approx(2 * M_PI / 3));
    const Gate& u3 = std::get<Gate>(c.ops()[4]);
    CHECK(u3.params[2] == doctest::Approx(-M_PI / 8));
}

TEST_CASE("parse errors carry line and column") {
    // Index past the register on line 4.
    const std::string bad = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[2];\n";
    try {
        from_qasm(bad);
        FAIL("expected a parse error");
    } catch (const QasmParseError& e) {
        CHECK(e.line == 4);
    }

    CHECK_THROWS_AS(from_qasm("OPENQASM 3.0;\nqreg q[1];\n"), QasmParseError);
    CHECK_THROWS_AS(from_qasm("OPENQASM 2.0;\nqreg q[1];\nbogus q[0];\n"), QasmParseError);
    CHECK_THROWS_AS(from_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0]\n"), QasmParseError);
}

TEST_CASE("round trip is lossless on randomly mutated circuits") {
    // Random gate circuits drawn from the mutation machinery: repeated
    // faulty mutation of a seed circuit walks through the whole gate set
    // with random angles and operands.
    Circuit seed = Circuit(3).h(0).cx(0, 1).rz(0.37, 2).ccx(0, 1, 2).cp(1.1, 2, 0);
    for (std::uint64_t step = 0; step < 12; ++step) {
        const auto mutants = generate_faulty_mutants(seed, 4, 1000 + step);
        for (const auto& m : mutants) {
            const Circuit back = from_qasm(to_qasm(m.circuit));
            CHECK(canonical_hash(back) == canonical_hash(m.circuit));
        }
        seed = mutants.back().circuit;
        if (seed.gate_count() == 0)
            break;
    }
}

TEST_CASE("measure statements need a classical register") {
    const std::string text =
        "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nh q[0];\nmeasure q[0] -> c[1];\n";
    const Circuit c = from_qasm(text);
    CHECK(c.has_measurements());
    const MeasureOp& m = std::get<MeasureOp>(c.ops()[1]);
    CHECK(m.qubit == 0);
    CHECK(m.cbit == 1);

    CHECK_THROWS_AS(from_qasm("OPENQASM 2.0;\nqreg q[1];\nmeasure q[0] -> c[0];\n"),
                    QasmParseError);
}
