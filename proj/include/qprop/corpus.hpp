#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/property.hpp"

namespace qprop {

/// Reference circuit builders for the subject algorithms.

/// Three-qubit teleportation of q0 to q2 with deferred (unitary) corrections,
/// so the whole circuit stays measurement-free and assertions own all
/// measurements.
Circuit build_teleportation();

/// Fourier transform on n qubits (1 <= n <= 10), controlled-phase ladder plus
/// the final swap reversal. Realizes F[x][y] = w^{xy}/sqrt(N) in the
/// LSB-first index convention (qubit 0 is bit 0).
Circuit build_qft(int n);

/// Phase estimation with m counting qubits (1 <= m <= 8, qubits 0..m-1) and
/// the given unitary (<= 2 qubits) on the target register above them.
/// Basis-state eigenstates are prepared with X gates; general states use an
/// initialization op (and then the circuit is not QASM-exportable).
Circuit build_qpe(int counting_qubits, const Circuit& unitary, const StateVector& eigenstate);

/// Grover search: uniform initialization then (oracle, diffusion) repeated.
Circuit build_grover(int n, const Circuit& oracle, int iterations);

/// Iteration count that concentrates amplitude on |S| marked states out of
/// 2^n: max(1, floor(pi/4 sqrt(2^n/|S|))).
int grover_iterations(int n, std::size_t marked_count);

/// Deutsch-Jozsa on n input qubits with a bit-flip oracle on n+1 qubits
/// (ancilla last). The ancilla is left in |-> rather than uncomputed.
Circuit build_dj(int n, const Circuit& oracle);

/// Superdense coding round trip for a 2-bit value; the output qubits land
/// deterministically in the computational state encoding the value
/// (q0 = bit 0).
Circuit build_superdense(int value);

/// A subject algorithm, the representative circuit mutation targets, and its
/// three properties, ordered so that prefix subsets grow in coverage.
/// Properties are built against an arbitrary circuit standing in for the
/// base, which is how mutants get tested by the same suite.
struct AlgorithmFixture {
    std::string name;
    Circuit base;
    std::function<std::vector<Property>(const Circuit&)> properties;
    std::uint64_t default_faulty_seed = 0;
    std::uint64_t default_equivalent_seed = 0;
};

const std::vector<AlgorithmFixture>& corpus();
const AlgorithmFixture& fixture_by_name(const std::string& name);

} // namespace qprop
