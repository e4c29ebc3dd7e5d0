#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/statevector.hpp"

namespace qprop {

/// Grover-style phase oracle together with the basis states it marks.
struct PhaseOracle {
    Circuit circuit;
    std::vector<std::uint64_t> marked; // ascending
};

/// Bit-flip function oracle on n inputs plus an ancilla (qubit n).
/// Balanced oracles realize f(x) = mask.x over GF(2); constant ones are the
/// identity or a plain ancilla flip.
struct FunctionOracle {
    Circuit circuit;
    bool balanced = false;
    std::uint64_t mask = 0; // nonzero iff balanced
    bool flipped = false;   // constant-1 vs constant-0
};

using GeneratedValue = std::variant<StateVector, Circuit, PhaseOracle, FunctionOracle, std::int64_t>;

enum class FunctionKind { Constant, Balanced };

/// A deterministic, seeded input source for properties. Same seed, same
/// value, bit for bit: that is the contract that makes failing cases
/// replayable. Generators with equal signatures draw equal values from equal
/// seeds, which is what lets the runner share inputs across properties.
class InputGenerator {
public:
    enum class Kind {
        RandomState,
        RandomUnitary,
        RandomInt,
        GroverOracle,
        UcnotStatePrep,
        ConstantOrBalanced,
    };

    /// Haar-random pure state on n qubits (1 <= n <= 20): independent complex
    /// Gaussian amplitudes, normalized.
    static InputGenerator random_state(int num_qubits);

    /// Haar-random unitary on n qubits (1 <= n <= 4) as a gate sequence:
    /// Ginibre sample, QR orthonormalization, exact synthesis.
    static InputGenerator random_unitary(int num_qubits);

    /// Uniform integer in [low, high].
    static InputGenerator random_int(std::int64_t low, std::int64_t high);

    /// Phase-flip oracle on n qubits (n <= 6) marking a uniformly chosen
    /// subset with min_frac*2^n <= |S| <= max_frac*2^n.
    static InputGenerator grover_oracle(int num_qubits, double min_frac, double max_frac);

    /// State-preparation circuit of alternating single-qubit U layers and
    /// random CX pairs, n layers deep. Hardware-friendly: no initialization op.
    static InputGenerator ucnot_state_prep(int num_qubits);

    /// Deutsch-Jozsa style oracle, constant or balanced, on n inputs plus an
    /// ancilla. Balanced functions are the linear (mask) family, which CX
    /// fan-in realizes exactly.
    static InputGenerator constant_or_balanced(int num_qubits, FunctionKind kind);

    Kind kind() const { return kind_; }

    /// Canonical (kind, parameters) signature; the seed-stream key.
    const std::string& signature() const { return signature_; }

    GeneratedValue generate(std::uint64_t seed) const;

private:
    InputGenerator(Kind kind, std::string signature) : kind_(kind), signature_(std::move(signature)) {}

    Kind kind_;
    std::string signature_;
    int num_qubits_ = 0;
    std::int64_t low_ = 0;
    std::int64_t high_ = 0;
    double min_frac_ = 0.0;
    double max_frac_ = 0.0;
    FunctionKind fn_kind_ = FunctionKind::Constant;
};

/// Phase oracle marking exactly the given basis states: a diagonal +-1
/// unitary built as one multi-controlled Z per marked state (n <= 6).
Circuit phase_oracle(int num_qubits, const std::vector<std::uint64_t>& marked);

/// Precondition helper used by search-style properties: true when the marked
/// set covers less than half of the basis states.
bool marks_less_than_half(int num_qubits, const std::vector<std::uint64_t>& marked);

} // namespace qprop
