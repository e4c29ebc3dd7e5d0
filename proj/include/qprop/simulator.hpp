#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/statevector.hpp"

namespace qprop {

/// Measurement tallies for one sampled circuit.
///
/// Keys are outcome bitstrings over the measured qubits in ascending qubit
/// index order; character k of a key is the outcome of the k-th measured
/// qubit in that order ('0'/'1'). Only outcomes that were actually drawn
/// appear, so counts always sum to total_shots.
struct Counts {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_shots = 0;
    std::vector<int> measured_qubits; // ascending
};

/// Exact amplitudes of applying the circuit to |0...0>. Initialization ops
/// set their target subspace. Rejects circuits containing measurements;
/// sampling is sample_counts' job.
StateVector simulate_statevector(const Circuit& c);

/// Draws `shots` outcomes from the exact marginal distribution of the
/// measured qubits. Requires at least one measurement, and all measurement
/// ops to be Z-basis (non-Z axes are expressed as basis-change gates).
/// Deterministic for fixed (circuit, shots, seed).
Counts sample_counts(const Circuit& c, int shots, std::uint64_t seed);

/// Outcome probabilities for the listed qubits, tracing out the rest.
/// Entry j has bit k set iff qubits[k] measured as 1.
std::vector<double> marginal_distribution(const StateVector& sv, const std::vector<int>& qubits);

/// 2x2 matrix of a single-qubit gate kind, row-major.
std::array<cplx, 4> single_qubit_matrix(GateKind kind, const std::vector<double>& params);

} // namespace qprop
