#include "qprop/corpus.hpp"

#include <cmath>
#include <stdexcept>

#include "qprop/matrix.hpp"
#include "qprop/synthesis.hpp"

namespace qprop {

Circuit build_teleportation() {
    return Circuit(3)
        .h(1)
        .cx(1, 2) // entangled pair between the channel qubits
        .cx(0, 1)
        .h(0)
        .cx(1, 2) // deferred X correction
        .cz(0, 2); // deferred Z correction
}

Circuit build_qft(int n) {
    if (n < 1 || n > 10)
        throw std::invalid_argument("build_qft: size out of range");
    Circuit c(n);
    for (int j = n - 1; j >= 0; --j) {
        c = c.h(j);
        for (int k = j - 1; k >= 0; --k)
            c = c.cp(M_PI / static_cast<double>(1 << (j - k)), k, j);
    }
    for (int i = 0; i < n / 2; ++i)
        c = c.swap(i, n - 1 - i);
    return c;
}

Circuit build_qpe(int counting_qubits, const Circuit& unitary, const StateVector& eigenstate) {
    if (counting_qubits < 1 || counting_qubits > 8)
        throw std::invalid_argument("build_qpe: counting register size out of range");
    if (unitary.num_qubits() > 2)
        throw std::invalid_argument("build_qpe: unitary acts on more than 2 qubits");
    if (eigenstate.num_qubits() != unitary.num_qubits())
        throw std::invalid_argument("build_qpe: eigenstate size does not match the unitary");

    const int m = counting_qubits;
    const int nu = unitary.num_qubits();
    CircuitBuilder builder(m + nu);

    std::vector<int> targets;
    for (int q = 0; q < nu; ++q)
        targets.push_back(m + q);

    std::uint64_t basis_index = 0;
    if (eigenstate.as_basis_state(basis_index)) {
        for (int q = 0; q < nu; ++q)
            if (basis_index & (std::uint64_t{1} << q))
                builder.gate(GateKind::X, {}, {m + q});
    } else {
        builder.initialize(eigenstate, targets);
    }

    for (int j = 0; j < m; ++j)
        builder.gate(GateKind::H, {}, {j});

    CMatrix power = circuit_unitary(unitary);
    for (int j = 0; j < m; ++j) {
        emit_unitary(builder, power, targets, {j});
        if (j + 1 < m)
            power = power * power;
    }

    Circuit iqft = build_qft(m).inverse();
    builder.append(iqft);
    return builder.take();
}

int grover_iterations(int n, std::size_t marked_count) {
    if (marked_count == 0)
        return 1;
    const double ratio = std::sqrt(static_cast<double>(std::uint64_t{1} << n) /
                                   static_cast<double>(marked_count));
    const int k = static_cast<int>(std::floor(M_PI / 4.0 * ratio));
    return std::max(1, k);
}

Circuit build_grover(int n, const Circuit& oracle, int iterations) {
    if (oracle.num_qubits() != n)
        throw std::invalid_argument("build_grover: oracle size mismatch");
    if (iterations < 1)
        throw std::invalid_argument("build_grover: iteration count must be positive");

    CircuitBuilder builder(n);
    for (int q = 0; q < n; ++q)
        builder.gate(GateKind::H, {}, {q});
    for (int it = 0; it < iterations; ++it) {
        builder.append(oracle);
        // Diffusion: reflect about the uniform state (global phase free).
        for (int q = 0; q < n; ++q)
            builder.gate(GateKind::H, {}, {q});
        for (int q = 0; q < n; ++q)
            builder.gate(GateKind::X, {}, {q});
        if (n == 1) {
            builder.gate(GateKind::Z, {}, {0});
        } else {
            std::vector<int> controls;
            for (int q = 1; q < n; ++q)
                controls.push_back(q);
            builder.gate(GateKind::H, {}, {0});
            emit_mcx(builder, controls, 0);
            builder.gate(GateKind::H, {}, {0});
        }
        for (int q = 0; q < n; ++q)
            builder.gate(GateKind::X, {}, {q});
        for (int q = 0; q < n; ++q)
            builder.gate(GateKind::H, {}, {q});
    }
    return builder.take();
}

Circuit build_dj(int n, const Circuit& oracle) {
    if (oracle.num_qubits() != n + 1)
        throw std::invalid_argument("build_dj: oracle must act on n inputs plus an ancilla");
    CircuitBuilder builder(n + 1);
    builder.gate(GateKind::X, {}, {n});
    for (int q = 0; q <= n; ++q)
        builder.gate(GateKind::H, {}, {q});
    builder.append(oracle);
    for (int q = 0; q < n; ++q)
        builder.gate(GateKind::H, {}, {q});
    return builder.take();
}

Circuit build_superdense(int value) {
    if (value < 0 || value > 3)
        throw std::invalid_argument("build_superdense: value must be a 2-bit integer");
    Circuit c = Circuit(2).h(0).cx(0, 1);
    if (value & 2)
        c = c.x(0);
    if (value & 1)
        c = c.z(0);
    return c.cx(0, 1).h(0);
}

namespace {

const StateVector& input_state(const std::vector<GeneratedValue>& inputs, std::size_t i) {
    return std::get<StateVector>(inputs[i]);
}

std::string lsb_first_bits(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if (value & (std::uint64_t{1} << i))
            out[i] = '1';
    return out;
}

std::vector<Property> teleportation_properties(const Circuit& cut) {
    std::vector<Property> props;

    // Weakest first: a single Z-side check, then the ancilla structure, then
    // the full three-basis comparison. The 0.55 margin keeps the check
    // honest at moderate shot counts while staying decisive at high ones.
    props.push_back(Property{
        "teleport_dominant_outcome",
        {InputGenerator::random_state(1)},
        [](const std::vector<GeneratedValue>& in) {
            return std::norm(input_state(in, 0).amplitudes()[0]) >= 0.55;
        },
        [cut](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            Circuit qc = Circuit(3).with_initialize(input_state(in, 0), {0}).compose(cut);
            sink.assert_most_frequent(qc, {2}, "0");
        }});

    props.push_back(Property{
        "teleport_channel_left_uniform",
        {InputGenerator::random_state(1)},
        nullptr,
        [cut](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            Circuit qc = Circuit(3).with_initialize(input_state(in, 0), {0}).compose(cut);
            // After the deferred corrections the message/channel qubits are
            // exactly |+>|+>.
            sink.assert_probability(qc, {0, 1}, {0.5, 0.5}, Basis::Z);
            sink.assert_probability(qc, {0, 1}, {1.0, 1.0}, Basis::X);
        }});

    props.push_back(Property{
        "teleport_output_equals_input",
        {InputGenerator::random_state(1)},
        nullptr,
        [cut](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const StateVector& psi = input_state(in, 0);
            Circuit qc = Circuit(3).with_initialize(psi, {0}).compose(cut);
            Circuit qc2 = Circuit(1).with_initialize(psi, {0});
            sink.assert_equal(qc, {2}, qc2, {0});
        }});

    return props;
}

std::vector<Property> qft_properties(const Circuit& cut) {
    const int n = cut.num_qubits();
    std::vector<Property> props;

    props.push_back(Property{
        "qft_zero_input_uniform",
        {},
        nullptr,
        [cut, n](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(n).compose(cut);
            std::vector<int> qubits;
            for (int q = 0; q < n; ++q)
                qubits.push_back(q);
            sink.assert_probability(qc, qubits, std::vector<double>(qubits.size(), 0.5),
                                    Basis::Z);
            sink.assert_probability(qc, qubits, std::vector<double>(qubits.size(), 1.0),
                                    Basis::X);
        }});

    props.push_back(Property{
        "qft_basis_state_phase_profile",
        {InputGenerator::random_int(0, (1 << n) - 1)},
        nullptr,
        [cut, n](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const std::uint64_t k =
                static_cast<std::uint64_t>(std::get<std::int64_t>(in[0]));
            Circuit a(n);
            for (int q = 0; q < n; ++q)
                if (k & (std::uint64_t{1} << q))
                    a = a.x(q);
            a = a.compose(cut);
            // F|k> is the product of per-qubit phase states.
            Circuit b(n);
            for (int t = 0; t < n; ++t) {
                const double angle = 2.0 * M_PI * static_cast<double>(k) *
                                     static_cast<double>(std::uint64_t{1} << t) /
                                     static_cast<double>(std::uint64_t{1} << n);
                b = b.h(t).p(angle, t);
            }
            std::vector<int> qubits;
            for (int q = 0; q < n; ++q)
                qubits.push_back(q);
            sink.assert_equal(a, qubits, b, qubits);
        }});

    props.push_back(Property{
        "qft_inverse_roundtrip",
        {InputGenerator::random_state(n)},
        nullptr,
        [cut, n](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const StateVector& psi = input_state(in, 0);
            std::vector<int> qubits;
            for (int q = 0; q < n; ++q)
                qubits.push_back(q);
            Circuit a = Circuit(n)
                            .with_initialize(psi, qubits)
                            .compose(cut)
                            .compose(build_qft(n).inverse());
            Circuit b = Circuit(n).with_initialize(psi, qubits);
            sink.assert_equal(a, qubits, b, qubits);
        }});

    return props;
}

constexpr int kQpeCounting = 3;
constexpr std::uint64_t kQpePhaseIndex = 5; // phase 5/8

std::vector<Property> qpe_properties(const Circuit& cut) {
    std::vector<Property> props;
    const std::string expected = lsb_first_bits(kQpePhaseIndex, kQpeCounting);

    // Both exact eigenphases (0 and 5/8) keep counting qubit 1 at zero, so
    // that marginal is a sharp invariant: any leaked amplitude shows up as a
    // decisive failure against a 0/1 target.
    props.push_back(Property{
        "qpe_eigenphase_recovered",
        {InputGenerator::random_state(1)},
        [](const std::vector<GeneratedValue>& in) {
            return std::norm(input_state(in, 0).amplitudes()[1]) >= 0.7;
        },
        [cut, expected](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            Circuit qc =
                Circuit(4).with_initialize(input_state(in, 0), {3}).compose(cut);
            sink.assert_most_frequent(qc, {0, 1, 2}, expected);
            sink.assert_probability(qc, {1}, {1.0}, Basis::Z);
        }});

    props.push_back(Property{
        "qpe_zero_phase_reads_zero",
        {InputGenerator::random_state(1)},
        [](const std::vector<GeneratedValue>& in) {
            return std::norm(input_state(in, 0).amplitudes()[0]) >= 0.7;
        },
        [cut](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            Circuit qc =
                Circuit(4).with_initialize(input_state(in, 0), {3}).compose(cut);
            sink.assert_most_frequent(qc, {0, 1, 2}, "000");
            sink.assert_probability(qc, {1}, {1.0}, Basis::Z);
        }});

    props.push_back(Property{
        "qpe_eigenstate_register_preserved",
        {InputGenerator::random_int(0, 1)},
        nullptr,
        [cut](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const bool one = std::get<std::int64_t>(in[0]) == 1;
            Circuit qc(4);
            if (one)
                qc = qc.x(3);
            qc = qc.compose(cut);
            sink.assert_probability(qc, {3}, {one ? 0.0 : 1.0}, Basis::Z);
            // Exact-phase estimation is deterministic on basis eigenstates.
            if (one)
                sink.assert_probability(qc, {0, 1, 2}, {0.0, 1.0, 0.0}, Basis::Z);
            else
                sink.assert_probability(qc, {0, 1, 2}, {1.0, 1.0, 1.0}, Basis::Z);
        }});

    return props;
}

constexpr std::uint64_t kGroverMarked = 5;

std::vector<Property> grover_properties(const Circuit& cut) {
    std::vector<Property> props;
    const int n = 3;

    // Exact outcome probabilities after two amplification rounds.
    const double theta = std::asin(std::sqrt(1.0 / 8.0));
    const double p_marked = std::pow(std::sin(5.0 * theta), 2.0);
    const double p_other = (1.0 - p_marked) / 7.0;

    props.push_back(Property{
        "grover_marked_state_most_frequent",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(3).compose(cut);
            sink.assert_most_frequent(qc, {0, 1, 2}, lsb_first_bits(kGroverMarked, 3));
        }});

    props.push_back(Property{
        "grover_amplified_marginals",
        {},
        nullptr,
        [cut, p_marked, p_other](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(3).compose(cut);
            // Marked state 101 (LSB first): bits 0 and 2 are 1.
            sink.assert_probability(qc, {0, 1, 2},
                                    {4.0 * p_other, p_marked + 3.0 * p_other, 4.0 * p_other},
                                    Basis::Z);
        }});

    props.push_back(Property{
        "grover_differs_from_other_oracle",
        {InputGenerator::grover_oracle(n, 1.0 / 8.0, 3.0 / 8.0)},
        [](const std::vector<GeneratedValue>& in) {
            const PhaseOracle& oracle = std::get<PhaseOracle>(in[0]);
            if (oracle.marked.empty() || !marks_less_than_half(3, oracle.marked))
                return false;
            for (std::uint64_t s : oracle.marked)
                if (s == kGroverMarked)
                    return false;
            return true;
        },
        [cut, n](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const PhaseOracle& oracle = std::get<PhaseOracle>(in[0]);
            Circuit reference =
                build_grover(n, oracle.circuit, grover_iterations(n, oracle.marked.size()));
            sink.assert_different(Circuit(3).compose(cut), {0, 1, 2}, reference, {0, 1, 2});
        }});

    return props;
}

constexpr std::uint64_t kDjMask = 5;

std::vector<Property> dj_properties(const Circuit& cut) {
    std::vector<Property> props;
    const int n = 3;

    props.push_back(Property{
        "dj_balanced_mask_read_back",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(4).compose(cut);
            sink.assert_most_frequent(qc, {0, 1, 2}, lsb_first_bits(kDjMask, 3));
            // A single query reads the mask deterministically.
            sink.assert_probability(qc, {0, 1, 2}, {0.0, 1.0, 0.0}, Basis::Z);
        }});

    props.push_back(Property{
        "dj_differs_from_other_balanced",
        {InputGenerator::constant_or_balanced(n, FunctionKind::Balanced)},
        [](const std::vector<GeneratedValue>& in) {
            return std::get<FunctionOracle>(in[0]).mask != kDjMask;
        },
        [cut, n](const std::vector<GeneratedValue>& in, AssertionSink& sink) {
            const FunctionOracle& oracle = std::get<FunctionOracle>(in[0]);
            Circuit reference = build_dj(n, oracle.circuit);
            sink.assert_different(Circuit(4).compose(cut), {0, 1, 2}, reference, {0, 1, 2});
        }});

    props.push_back(Property{
        "dj_ancilla_stays_minus",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(4).compose(cut);
            sink.assert_probability(qc, {3}, {0.5}, Basis::Z);
            sink.assert_probability(qc, {3}, {0.0}, Basis::X);
        }});

    return props;
}

constexpr int kSuperdenseValue = 2;

std::vector<Property> superdense_properties(const Circuit& cut) {
    std::vector<Property> props;

    props.push_back(Property{
        "superdense_decodes_bits",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(2).compose(cut);
            sink.assert_most_frequent(qc, {0, 1}, lsb_first_bits(kSuperdenseValue, 2));
        }});

    props.push_back(Property{
        "superdense_outputs_computational",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            Circuit qc = Circuit(2).compose(cut);
            // A computational basis state: deterministic in Z, unbiased in X
            // and Y; the off-axis checks are what catch phase faults.
            sink.assert_probability(qc, {0, 1},
                                    {(kSuperdenseValue & 1) ? 0.0 : 1.0,
                                     (kSuperdenseValue & 2) ? 0.0 : 1.0},
                                    Basis::Z);
            sink.assert_probability(qc, {0, 1}, {0.5, 0.5}, Basis::X);
            sink.assert_probability(qc, {0, 1}, {0.5, 0.5}, Basis::Y);
        }});

    props.push_back(Property{
        "superdense_output_separable",
        {},
        nullptr,
        [cut](const std::vector<GeneratedValue>&, AssertionSink& sink) {
            sink.assert_separable(Circuit(2).compose(cut), {0, 1}, Basis::Z);
        }});

    return props;
}

} // namespace

const std::vector<AlgorithmFixture>& corpus() {
    static const std::vector<AlgorithmFixture> fixtures = [] {
        std::vector<AlgorithmFixture> out;

        out.push_back(AlgorithmFixture{"teleportation", build_teleportation(),
                                       teleportation_properties, 101, 201});

        out.push_back(AlgorithmFixture{"qft", build_qft(3), qft_properties, 102, 202});

        const Circuit qpe_unitary =
            Circuit(1).p(2.0 * M_PI * static_cast<double>(kQpePhaseIndex) / 8.0, 0);
        out.push_back(AlgorithmFixture{
            "qpe", build_qpe(kQpeCounting, qpe_unitary, StateVector::zero_state(1)),
            qpe_properties, 103, 203});

        const Circuit grover_oracle_c = phase_oracle(3, {kGroverMarked});
        out.push_back(AlgorithmFixture{"grover", build_grover(3, grover_oracle_c, 2),
                                       grover_properties, 104, 204});

        const Circuit dj_oracle = Circuit(4).cx(0, 3).cx(2, 3); // f(x) = x0 xor x2
        out.push_back(AlgorithmFixture{"deutsch_jozsa", build_dj(3, dj_oracle), dj_properties,
                                       105, 205});

        out.push_back(AlgorithmFixture{"superdense", build_superdense(kSuperdenseValue),
                                       superdense_properties, 106, 206});

        return out;
    }();
    return fixtures;
}

const AlgorithmFixture& fixture_by_name(const std::string& name) {
    for (const auto& f : corpus())
        if (f.name == name)
            return f;
    throw std::out_of_range("unknown algorithm fixture '" + name + "'");
}

} // namespace qprop
