#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qprop/statevector.hpp"

namespace qprop {

enum class GateKind {
    H, X, Y, Z, S, Sdg, T, Tdg,
    RX, RY, RZ, P, U,
    CX, CZ, SWAP, CP,
    CCX,
};

enum class Basis { X, Y, Z };

/// Number of qubit operands for a gate kind.
int gate_arity(GateKind k);
/// Number of angle parameters for a gate kind.
int gate_param_count(GateKind k);
/// Lowercase interchange name (h, cx, u1, u3, cu1, ...).
const char* gate_name(GateKind k);
char basis_name(Basis b);

/// A gate application. Angles are radians. Validation happens when the gate
/// is appended to a circuit.
struct Gate {
    GateKind kind;
    std::vector<double> params;
    std::vector<int> qubits;
};

/// State preparation on a sorted set of so-far-untouched qubits.
struct InitializeOp {
    std::vector<cplx> amplitudes; // length 2^targets.size()
    std::vector<int> targets;     // sorted ascending
};

/// Terminal measurement of one qubit. The basis field records the axis; a
/// non-Z axis must have been realized beforehand by basis-change gates
/// (see Circuit::with_basis_change), so sampling only ever collapses in Z.
struct MeasureOp {
    int qubit;
    Basis basis;
    int cbit;
};

using CircuitOp = std::variant<Gate, InitializeOp, MeasureOp>;

/// 128-bit structural digest. Equal digests identify element-wise equal
/// circuits (same op kinds, exact parameter bit patterns, indices, order).
struct Digest {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Digest&, const Digest&) = default;
    friend auto operator<=>(const Digest&, const Digest&) = default;
};

std::string to_string(const Digest& d);

/// Immutable quantum circuit: a fixed qubit count and an ordered op list.
///
/// Every mutating-looking operation returns a new value; existing values are
/// never changed, so circuits are safe to share across threads. Invariants
/// enforced on construction:
///   - all referenced qubit indices are in range,
///   - gate operands are pairwise distinct and match the kind's arity,
///   - at most one measurement per qubit, and nothing follows it on that
///     qubit,
///   - initialization only targets untouched qubits, with a unit-norm state
///     of matching dimension.
class Circuit {
public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<CircuitOp>& ops() const { return ops_; }
    std::size_t gate_count() const;
    bool has_measurements() const;

    Circuit with_gate(Gate g) const;
    Circuit with_initialize(const StateVector& state, std::vector<int> targets) const;
    Circuit with_measure(int qubit, Basis basis, int cbit) const;

    /// Pre-measurement rotation mapping the given basis onto Z:
    /// Z adds nothing, X adds H, Y adds Sdg then H.
    Circuit with_basis_change(int qubit, Basis basis) const;

    /// Appends other's ops, mapping its qubit i onto qubit_map[i] (identity
    /// when omitted). The map must be injective and in range.
    Circuit compose(const Circuit& other, const std::vector<int>* qubit_map = nullptr) const;

    /// Reversed op order with each gate inverted. Only defined for gate-only
    /// circuits.
    Circuit inverse() const;

    // Shorthand appenders for the common gates.
    Circuit h(int q) const { return with_gate({GateKind::H, {}, {q}}); }
    Circuit x(int q) const { return with_gate({GateKind::X, {}, {q}}); }
    Circuit y(int q) const { return with_gate({GateKind::Y, {}, {q}}); }
    Circuit z(int q) const { return with_gate({GateKind::Z, {}, {q}}); }
    Circuit s(int q) const { return with_gate({GateKind::S, {}, {q}}); }
    Circuit sdg(int q) const { return with_gate({GateKind::Sdg, {}, {q}}); }
    Circuit t(int q) const { return with_gate({GateKind::T, {}, {q}}); }
    Circuit tdg(int q) const { return with_gate({GateKind::Tdg, {}, {q}}); }
    Circuit rx(double a, int q) const { return with_gate({GateKind::RX, {a}, {q}}); }
    Circuit ry(double a, int q) const { return with_gate({GateKind::RY, {a}, {q}}); }
    Circuit rz(double a, int q) const { return with_gate({GateKind::RZ, {a}, {q}}); }
    Circuit p(double a, int q) const { return with_gate({GateKind::P, {a}, {q}}); }
    Circuit u(double th, double ph, double la, int q) const {
        return with_gate({GateKind::U, {th, ph, la}, {q}});
    }
    Circuit cx(int c, int t) const { return with_gate({GateKind::CX, {}, {c, t}}); }
    Circuit cz(int a, int b) const { return with_gate({GateKind::CZ, {}, {a, b}}); }
    Circuit swap(int a, int b) const { return with_gate({GateKind::SWAP, {}, {a, b}}); }
    Circuit cp(double a, int c, int t) const { return with_gate({GateKind::CP, {a}, {c, t}}); }
    Circuit ccx(int c1, int c2, int t) const { return with_gate({GateKind::CCX, {}, {c1, c2, t}}); }

    friend bool operator==(const Circuit& a, const Circuit& b);

private:
    friend class CircuitBuilder;

    void check_gate(const Gate& g) const;
    void append_unchecked(CircuitOp op);

    int num_qubits_;
    std::vector<CircuitOp> ops_;
    // Per-qubit build state, carried so append checks are O(operands).
    std::vector<bool> touched_;
    std::vector<bool> measured_;
};

/// Mutable accumulator for code that emits many gates (synthesis, algorithm
/// builders). Enforces the same invariants as Circuit.
class CircuitBuilder {
public:
    explicit CircuitBuilder(int num_qubits) : circuit_(num_qubits) {}

    void gate(Gate g);
    void gate(GateKind kind, std::vector<double> params, std::vector<int> qubits) {
        gate(Gate{kind, std::move(params), std::move(qubits)});
    }
    void initialize(const StateVector& state, std::vector<int> targets);
    void append(const Circuit& other, const std::vector<int>* qubit_map = nullptr);

    int num_qubits() const { return circuit_.num_qubits(); }

    Circuit take() { return std::move(circuit_); }

private:
    Circuit circuit_;
};

Digest canonical_hash(const Circuit& c);

} // namespace qprop
