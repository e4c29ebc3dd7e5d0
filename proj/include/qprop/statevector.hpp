#pragma once

#include <complex>
#include <vector>

namespace qprop {

using cplx = std::complex<double>;

/// Pure quantum state over n qubits: 2^n complex amplitudes, unit norm.
///
/// Amplitude index convention: bit q of the index is the value of qubit q,
/// i.e. qubit 0 is the least significant bit.
class StateVector {
public:
    /// Throws if the length is not a power of two or the norm is off by more
    /// than 1e-9.
    explicit StateVector(std::vector<cplx> amplitudes);

    /// |0...0> over n qubits.
    static StateVector zero_state(int num_qubits);

    /// Computational basis state |index> over n qubits.
    static StateVector basis_state(int num_qubits, std::uint64_t index);

    int num_qubits() const { return num_qubits_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm() const;

    /// |<a|b>| in [0,1]; 1 means equal up to global phase.
    static double fidelity(const StateVector& a, const StateVector& b);

    /// True when the amplitudes are exactly a computational basis vector
    /// within tol; writes the index when so.
    bool as_basis_state(std::uint64_t& index, double tol = 1e-12) const;

private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

} // namespace qprop
