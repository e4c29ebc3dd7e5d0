#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprop/circuit.hpp"

namespace qprop {

enum class AssertionKind { Equal, Different, Entangled, Separable, Probability, MostFrequent };

const char* assertion_kind_name(AssertionKind k);

struct AssertionId {
    std::string property;
    int input_ordinal = 0;
    int assertion_ordinal = 0;

    friend bool operator==(const AssertionId&, const AssertionId&) = default;
};

/// One registered postcondition check. Statistical kinds (Equal, Different,
/// Probability) compile into per-qubit, per-basis hypothesis tests whose
/// p-values enter the suite-wide correction family. Joint kinds (Entangled,
/// Separable, MostFrequent) measure their qubits together in a single basis
/// and judge the outcome set directly.
struct Assertion {
    AssertionId id;
    AssertionKind kind;

    Circuit circuit_a;
    std::vector<int> qubits_a;
    std::optional<Circuit> circuit_b; // Equal/Different only
    std::vector<int> qubits_b;

    std::vector<Basis> bases;          // Equal/Different: the compared bases
    Basis joint_basis = Basis::Z;      // joint kinds and Probability
    std::vector<double> probs_of_zero; // Probability targets
    std::string expected_outcome;      // MostFrequent, aligned with qubits_a
};

/// One hypothesis test inside an assertion, as reported in verdicts.
struct TestOutcome {
    std::string label; // e.g. "q2/q0 basis X"
    double p = 1.0;
    double threshold = 0.0;
    bool rejected = false;
};

struct AssertionVerdict {
    AssertionId id;
    AssertionKind kind;
    bool passed = false;
    std::vector<TestOutcome> tests;
    std::string failure_detail; // non-empty iff failed
    std::uint64_t input_seed = 0;
};

/// Accumulation-only registry handed to a property's operations body; calls
/// like `sink.assert_equal(qc, {2}, qc2, {0})` land here. Construction
/// validates shapes eagerly so misuse fails inside the operations call that
/// caused it.
class AssertionSink {
public:
    AssertionSink(std::string property_name, int input_ordinal);

    void assert_equal(const Circuit& a, std::vector<int> qubits_a, const Circuit& b,
                      std::vector<int> qubits_b,
                      std::vector<Basis> bases = {Basis::X, Basis::Y, Basis::Z});

    void assert_different(const Circuit& a, std::vector<int> qubits_a, const Circuit& b,
                          std::vector<int> qubits_b,
                          std::vector<Basis> bases = {Basis::X, Basis::Y, Basis::Z});

    void assert_entangled(const Circuit& c, std::vector<int> qubits, Basis basis = Basis::Z);

    void assert_separable(const Circuit& c, std::vector<int> qubits, Basis basis = Basis::Z);

    void assert_probability(const Circuit& c, std::vector<int> qubits,
                            std::vector<double> probs_of_zero, Basis basis = Basis::Z);

    void assert_most_frequent(const Circuit& c, std::vector<int> qubits, std::string expected,
                              Basis basis = Basis::Z);

    const std::vector<Assertion>& assertions() const { return assertions_; }
    std::vector<Assertion> take() { return std::move(assertions_); }

private:
    void push(Assertion a);
    std::string property_;
    int input_ordinal_;
    std::vector<Assertion> assertions_;
};

} // namespace qprop
