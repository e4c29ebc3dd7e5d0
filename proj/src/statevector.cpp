#include "qprop/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qprop {

namespace {

int log2_exact(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0)
        return -1;
    int k = 0;
    while ((n >> k) != 1)
        ++k;
    return k;
}

} // namespace

StateVector::StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    const int n = log2_exact(amps_.size());
    if (n < 0)
        throw std::invalid_argument("StateVector: length must be a power of two");
    num_qubits_ = n;
    if (std::abs(norm() - 1.0) > 1e-9)
        throw std::invalid_argument("StateVector: amplitudes are not unit norm");
}

StateVector StateVector::zero_state(int num_qubits) {
    return basis_state(num_qubits, 0);
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
    if (num_qubits < 1 || num_qubits > 30)
        throw std::invalid_argument("StateVector: bad qubit count");
    std::vector<cplx> amps(std::size_t{1} << num_qubits);
    if (index >= amps.size())
        throw std::invalid_argument("StateVector: basis index out of range");
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_)
        s += std::norm(a);
    return std::sqrt(s);
}

double StateVector::fidelity(const StateVector& a, const StateVector& b) {
    if (a.amps_.size() != b.amps_.size())
        throw std::invalid_argument("fidelity: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.amps_.size(); ++i)
        acc += std::conj(a.amps_[i]) * b.amps_[i];
    return std::abs(acc);
}

bool StateVector::as_basis_state(std::uint64_t& index, double tol) const {
    int hits = 0;
    std::uint64_t where = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double mag = std::abs(amps_[i]);
        if (mag > tol) {
            if (std::abs(mag - 1.0) > tol || std::abs(std::arg(amps_[i])) > tol)
                return false;
            ++hits;
            where = i;
        }
    }
    if (hits != 1)
        return false;
    index = where;
    return true;
}

} // namespace qprop
