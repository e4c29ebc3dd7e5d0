#include "doctest.h"

#include <cmath>
#include <set>

#include "qprop/generators.hpp"
#include "qprop/simulator.hpp"
#include "qprop/synthesis.hpp"

using namespace qprop;

TEST_CASE("random_state determinism and normalization") {
    const auto gen = InputGenerator::random_state(3);
    const auto a = std::get<StateVector>(gen.generate(5));
    const auto b = std::get<StateVector>(gen.generate(5));
    CHECK(a.amplitudes() == b.amplitudes()); // bit-for-bit

    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto sv = std::get<StateVector>(gen.generate(s));
        CHECK(std::abs(sv.norm() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(InputGenerator::random_state(0), std::invalid_argument);
}

TEST_CASE("random_state matches the Haar second moment") {
    // E|amplitude_0|^2 = 2^-n; Monte Carlo over 10k samples at n = 2.
    const auto gen = InputGenerator::random_state(2);
    double acc = 0.0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s)
        acc += std::norm(std::get<StateVector>(gen.generate(s)).amplitudes()[0]);
    CHECK(std::abs(acc / samples - 0.25) < 0.01);
}

TEST_CASE("random_unitary circuits realize their sampled matrix") {
    // Determinism plus unitarity; exactness against the sample is covered by
    // the synthesis tests, here we check the generated circuit is a genuine
    // unitary and stable across calls.
    for (int n = 1; n <= 2; ++n) {
        const auto gen = InputGenerator::random_unitary(n);
        const auto c1 = std::get<Circuit>(gen.generate(7));
        const auto c2 = std::get<Circuit>(gen.generate(7));
        CHECK(canonical_hash(c1) == canonical_hash(c2));
        CHECK(circuit_unitary(c1).is_unitary(1e-8));
    }
    CHECK_THROWS_AS(InputGenerator::random_unitary(5), std::invalid_argument);
}

TEST_CASE("random_unitary single-qubit case is nontrivial") {
    const auto gen = InputGenerator::random_unitary(1);
    std::set<std::string> digests;
    for (std::uint64_t s = 0; s < 10; ++s)
        digests.insert(to_string(canonical_hash(std::get<Circuit>(gen.generate(s)))));
    CHECK(digests.size() == 10);
}

TEST_CASE("random_int bounds, determinism, uniformity") {
    const auto gen = InputGenerator::random_int(0, 3);
    CHECK(std::get<std::int64_t>(InputGenerator::random_int(5, 5).generate(9)) == 5);
    CHECK(std::get<std::int64_t>(gen.generate(4)) == std::get<std::int64_t>(gen.generate(4)));
    CHECK_THROWS_AS(InputGenerator::random_int(3, 2), std::invalid_argument);

    int freq[4] = {0, 0, 0, 0};
    const int samples = 10000;
    for (int s = 0; s < samples; ++s)
        ++freq[std::get<std::int64_t>(gen.generate(static_cast<std::uint64_t>(s)))];
    for (int v = 0; v < 4; ++v)
        CHECK(std::abs(freq[v] / static_cast<double>(samples) - 0.25) < 0.02);
}

TEST_CASE("grover oracle marks exactly its subset") {
    const auto gen = InputGenerator::grover_oracle(3, 0.125, 0.5);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto oracle = std::get<PhaseOracle>(gen.generate(s));
        REQUIRE(!oracle.marked.empty());
        REQUIRE(oracle.marked.size() <= 4);

        // Acting on the uniform superposition flips exactly the marked
        // amplitudes.
        Circuit c(3);
        for (int q = 0; q < 3; ++q)
            c = c.h(q);
        const auto amps = simulate_statevector(c.compose(oracle.circuit)).amplitudes();
        const double s8 = 1.0 / std::sqrt(8.0);
        for (std::uint64_t idx = 0; idx < 8; ++idx) {
            const bool marked =
                std::find(oracle.marked.begin(), oracle.marked.end(), idx) != oracle.marked.end();
            CHECK(amps[idx].real() == doctest::Approx(marked ? -s8 : s8).epsilon(1e-9));
            CHECK(std::abs(amps[idx].imag()) < 1e-9);
        }
    }
}

TEST_CASE("grover oracle respects empty mark ranges") {
    const auto gen = InputGenerator::grover_oracle(2, 0.0, 0.0);
    const auto oracle = std::get<PhaseOracle>(gen.generate(3));
    CHECK(oracle.marked.empty());
    CHECK(oracle.circuit.ops().empty());
    CHECK_THROWS_AS(InputGenerator::grover_oracle(2, 0.3, 0.1), std::invalid_argument);

    // n=2 single-marked oracle is CZ-like: flips only |11>.
    const Circuit cz_like = phase_oracle(2, {3});
    Circuit c(2);
    c = c.h(0).h(1).compose(cz_like);
    const auto amps = simulate_statevector(c).amplitudes();
    CHECK(amps[3].real() == doctest::Approx(-0.5));
    CHECK(amps[0].real() == doctest::Approx(0.5));
}

TEST_CASE("marks_less_than_half helper") {
    CHECK(marks_less_than_half(3, {1, 2, 3}));
    CHECK_FALSE(marks_less_than_half(3, {0, 1, 2, 3}));
    CHECK(marks_less_than_half(1, {}));
}

TEST_CASE("ucnot layers") {
    const auto g1 = InputGenerator::ucnot_state_prep(1);
    const auto c1 = std::get<Circuit>(g1.generate(0));
    CHECK(c1.gate_count() == 1); // single U, no CX partner available
    CHECK(std::get<Gate>(c1.ops()[0]).kind == GateKind::U);

    const auto g3 = InputGenerator::ucnot_state_prep(3);
    const auto c3 = std::get<Circuit>(g3.generate(1));
    CHECK(c3.gate_count() == 3 * 3 + 3); // n layers of n U gates plus one CX each
    CHECK(std::abs(simulate_statevector(c3).norm() - 1.0) < 1e-12);
}

TEST_CASE("ucnot states are usually entangled at n=2") {
    const auto gen = InputGenerator::ucnot_state_prep(2);
    int entangled = 0;
    const int samples = 5000;
    for (int s = 0; s < samples; ++s) {
        const auto sv =
            simulate_statevector(std::get<Circuit>(gen.generate(static_cast<std::uint64_t>(s))));
        // Purity of the reduced state of qubit 0.
        const auto& a = sv.amplitudes();
        cplx r00 = std::conj(a[0]) * a[0] + std::conj(a[2]) * a[2];
        cplx r01 = std::conj(a[0]) * a[1] + std::conj(a[2]) * a[3];
        cplx r11 = std::conj(a[1]) * a[1] + std::conj(a[3]) * a[3];
        const double purity =
            std::norm(r00) + 2.0 * std::norm(r01) + std::norm(r11);
        if (purity < 1.0 - 1e-6)
            ++entangled;
    }
    CHECK(entangled > static_cast<int>(0.9 * samples));
}

TEST_CASE("constant and balanced oracles") {
    const auto cgen = InputGenerator::constant_or_balanced(3, FunctionKind::Constant);
    const auto c = std::get<FunctionOracle>(cgen.generate(2));
    CHECK_FALSE(c.balanced);
    // Constant oracles never touch the input register.
    for (const auto& op : c.circuit.ops())
        CHECK(std::get<Gate>(op).qubits == std::vector<int>{3});

    const auto bgen = InputGenerator::constant_or_balanced(3, FunctionKind::Balanced);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto b = std::get<FunctionOracle>(bgen.generate(s));
        CHECK(b.balanced);
        CHECK(b.mask >= 1);
        CHECK(b.mask <= 7);
        CHECK(b.circuit.gate_count() == static_cast<std::size_t>(__builtin_popcountll(b.mask)));
    }

    // Mask {0}: f(x) = x0, realized as CX(0, ancilla).
    // Find a seed with mask 1 to check the construction concretely.
    for (std::uint64_t s = 0; s < 64; ++s) {
        const auto b = std::get<FunctionOracle>(bgen.generate(s));
        if (b.mask == 1) {
            const Gate& g = std::get<Gate>(b.circuit.ops()[0]);
            CHECK(g.kind == GateKind::CX);
            CHECK(g.qubits == std::vector<int>{0, 3});
            break;
        }
    }
}

TEST_CASE("generator signatures separate kinds and parameters") {
    CHECK(InputGenerator::random_state(1).signature() ==
          InputGenerator::random_state(1).signature());
    CHECK(InputGenerator::random_state(1).signature() !=
          InputGenerator::random_state(2).signature());
    CHECK(InputGenerator::random_int(0, 3).signature() !=
          InputGenerator::random_int(0, 4).signature());
    CHECK(InputGenerator::grover_oracle(3, 0.1, 0.4).signature() !=
          InputGenerator::grover_oracle(3, 0.1, 0.5).signature());
}
