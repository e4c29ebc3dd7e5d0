#include "qprop/assertions.hpp"

#include <set>
#include <stdexcept>

namespace qprop {

const char* assertion_kind_name(AssertionKind k) {
    switch (k) {
        case AssertionKind::Equal:        return "equal";
        case AssertionKind::Different:    return "different";
        case AssertionKind::Entangled:    return "entangled";
        case AssertionKind::Separable:    return "separable";
        case AssertionKind::Probability:  return "probability";
        case AssertionKind::MostFrequent: return "most_frequent";
    }
    return "?";
}

namespace {

void check_qubits(const Circuit& c, const std::vector<int>& qubits, const char* what) {
    if (qubits.empty())
        throw std::invalid_argument(std::string(what) + ": empty qubit list");
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= c.num_qubits())
            throw std::invalid_argument(std::string(what) + ": qubit index out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument(std::string(what) + ": duplicate qubit index");
    }
    if (c.has_measurements())
        throw std::invalid_argument(std::string(what) +
                                    ": asserted circuits must be measurement-free");
}

} // namespace

AssertionSink::AssertionSink(std::string property_name, int input_ordinal)
    : property_(std::move(property_name)), input_ordinal_(input_ordinal) {}

void AssertionSink::push(Assertion a) {
    a.id = AssertionId{property_, input_ordinal_, static_cast<int>(assertions_.size())};
    assertions_.push_back(std::move(a));
}

void AssertionSink::assert_equal(const Circuit& a, std::vector<int> qubits_a, const Circuit& b,
                                 std::vector<int> qubits_b, std::vector<Basis> bases) {
    check_qubits(a, qubits_a, "assert_equal");
    check_qubits(b, qubits_b, "assert_equal");
    if (qubits_a.size() != qubits_b.size())
        throw std::invalid_argument("assert_equal: qubit list length mismatch");
    if (bases.empty())
        throw std::invalid_argument("assert_equal: empty basis list");
    Assertion out{{}, AssertionKind::Equal, a, std::move(qubits_a), b, std::move(qubits_b),
                  std::move(bases), Basis::Z, {}, {}};
    push(std::move(out));
}

void AssertionSink::assert_different(const Circuit& a, std::vector<int> qubits_a,
                                     const Circuit& b, std::vector<int> qubits_b,
                                     std::vector<Basis> bases) {
    check_qubits(a, qubits_a, "assert_different");
    check_qubits(b, qubits_b, "assert_different");
    if (qubits_a.size() != qubits_b.size())
        throw std::invalid_argument("assert_different: qubit list length mismatch");
    if (bases.empty())
        throw std::invalid_argument("assert_different: empty basis list");
    Assertion out{{}, AssertionKind::Different, a, std::move(qubits_a), b, std::move(qubits_b),
                  std::move(bases), Basis::Z, {}, {}};
    push(std::move(out));
}

void AssertionSink::assert_entangled(const Circuit& c, std::vector<int> qubits, Basis basis) {
    check_qubits(c, qubits, "assert_entangled");
    if (qubits.size() < 2)
        throw std::invalid_argument("assert_entangled: needs at least two qubits");
    Assertion out{{}, AssertionKind::Entangled, c, std::move(qubits), std::nullopt, {},
                  {}, basis, {}, {}};
    push(std::move(out));
}

void AssertionSink::assert_separable(const Circuit& c, std::vector<int> qubits, Basis basis) {
    check_qubits(c, qubits, "assert_separable");
    if (qubits.size() < 2)
        throw std::invalid_argument("assert_separable: needs at least two qubits");
    Assertion out{{}, AssertionKind::Separable, c, std::move(qubits), std::nullopt, {},
                  {}, basis, {}, {}};
    push(std::move(out));
}

void AssertionSink::assert_probability(const Circuit& c, std::vector<int> qubits,
                                       std::vector<double> probs_of_zero, Basis basis) {
    check_qubits(c, qubits, "assert_probability");
    if (probs_of_zero.size() != qubits.size())
        throw std::invalid_argument("assert_probability: one target per qubit required");
    for (double p : probs_of_zero)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("assert_probability: target outside [0,1]");
    Assertion out{{}, AssertionKind::Probability, c, std::move(qubits), std::nullopt, {},
                  {}, basis, std::move(probs_of_zero), {}};
    push(std::move(out));
}

void AssertionSink::assert_most_frequent(const Circuit& c, std::vector<int> qubits,
                                         std::string expected, Basis basis) {
    check_qubits(c, qubits, "assert_most_frequent");
    if (expected.size() != qubits.size())
        throw std::invalid_argument("assert_most_frequent: outcome length mismatch");
    for (char ch : expected)
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("assert_most_frequent: malformed outcome string");
    Assertion out{{}, AssertionKind::MostFrequent, c, std::move(qubits), std::nullopt, {},
                  {}, basis, {}, std::move(expected)};
    push(std::move(out));
}

} // namespace qprop
