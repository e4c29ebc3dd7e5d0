#pragma once

// Independent cross-check for the simulator: builds the full 2^n x 2^n
// matrix of every gate and multiplies matrices into the state, instead of
// going through the stride kernels. Gate matrices are written out from the
// textbook definitions on purpose; only the index convention (qubit q = bit
// q) is shared with the implementation.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/matrix.hpp"

namespace oracle {

using qprop::cplx;
using qprop::CMatrix;
using qprop::Circuit;
using qprop::Gate;
using qprop::GateKind;

inline std::array<cplx, 4> one_qubit_matrix(GateKind kind, const std::vector<double>& p) {
    const cplx i{0.0, 1.0};
    const double s2 = std::sqrt(0.5);
    switch (kind) {
        case GateKind::H:   return {s2, s2, s2, -s2};
        case GateKind::X:   return {0, 1, 1, 0};
        case GateKind::Y:   return {0, -i, i, 0};
        case GateKind::Z:   return {1, 0, 0, -1};
        case GateKind::S:   return {1, 0, 0, std::polar(1.0, M_PI / 2)};
        case GateKind::Sdg: return {1, 0, 0, std::polar(1.0, -M_PI / 2)};
        case GateKind::T:   return {1, 0, 0, std::polar(1.0, M_PI / 4)};
        case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -M_PI / 4)};
        case GateKind::RX:
            return {std::cos(p[0] / 2), -i * std::sin(p[0] / 2), -i * std::sin(p[0] / 2),
                    std::cos(p[0] / 2)};
        case GateKind::RY:
            return {std::cos(p[0] / 2), -std::sin(p[0] / 2), std::sin(p[0] / 2),
                    std::cos(p[0] / 2)};
        case GateKind::RZ:
            return {std::polar(1.0, -p[0] / 2), 0, 0, std::polar(1.0, p[0] / 2)};
        case GateKind::P:
            return {1, 0, 0, std::polar(1.0, p[0])};
        case GateKind::U:
            return {std::cos(p[0] / 2), -std::polar(1.0, p[2]) * std::sin(p[0] / 2),
                    std::polar(1.0, p[1]) * std::sin(p[0] / 2),
                    std::polar(1.0, p[1] + p[2]) * std::cos(p[0] / 2)};
        default:
            throw std::invalid_argument("oracle: not a one-qubit gate");
    }
}

// Local gate matrix over the gate's own qubits; local bit i belongs to
// gate qubit i. Multi-qubit gates are defined via their action on basis
// states.
inline CMatrix local_matrix(const Gate& g) {
    const int k = qprop::gate_arity(g.kind);
    const int dim = 1 << k;
    CMatrix m(dim);
    switch (g.kind) {
        case GateKind::CX:
            for (int in = 0; in < dim; ++in)
                m.at((in & 1) ? in ^ 2 : in, in) = 1.0;
            return m;
        case GateKind::CZ:
            for (int in = 0; in < dim; ++in)
                m.at(in, in) = (in == 3) ? -1.0 : 1.0;
            return m;
        case GateKind::CP:
            for (int in = 0; in < dim; ++in)
                m.at(in, in) = (in == 3) ? std::polar(1.0, g.params[0]) : 1.0;
            return m;
        case GateKind::SWAP:
            for (int in = 0; in < dim; ++in) {
                const int out = ((in & 1) << 1) | ((in >> 1) & 1);
                m.at(out, in) = 1.0;
            }
            return m;
        case GateKind::CCX:
            for (int in = 0; in < dim; ++in)
                m.at(((in & 3) == 3) ? in ^ 4 : in, in) = 1.0;
            return m;
        default: {
            const auto u = one_qubit_matrix(g.kind, g.params);
            m.at(0, 0) = u[0];
            m.at(0, 1) = u[1];
            m.at(1, 0) = u[2];
            m.at(1, 1) = u[3];
            return m;
        }
    }
}

// Embeds the local matrix into the full 2^n x 2^n operator.
inline CMatrix full_matrix(int num_qubits, const Gate& g) {
    const CMatrix local = local_matrix(g);
    const std::size_t dim = std::size_t{1} << num_qubits;
    const int k = qprop::gate_arity(g.kind);
    CMatrix full(static_cast<int>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        int local_in = 0;
        for (int b = 0; b < k; ++b)
            if (col & (std::size_t{1} << g.qubits[b]))
                local_in |= 1 << b;
        for (int local_out = 0; local_out < (1 << k); ++local_out) {
            const cplx amp = local.at(local_out, local_in);
            if (amp == cplx{})
                continue;
            std::size_t row = col;
            for (int b = 0; b < k; ++b) {
                const std::size_t bit = std::size_t{1} << g.qubits[b];
                if (local_out & (1 << b))
                    row |= bit;
                else
                    row &= ~bit;
            }
            full.at(static_cast<int>(row), static_cast<int>(col)) += amp;
        }
    }
    return full;
}

// Dense-matrix-product state of a gate-only circuit applied to |0...0>.
inline std::vector<cplx> statevector(const Circuit& c) {
    std::vector<cplx> state(std::size_t{1} << c.num_qubits());
    state[0] = 1.0;
    for (const auto& op : c.ops()) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g)
            throw std::invalid_argument("oracle: gate-only circuits");
        state = full_matrix(c.num_qubits(), *g).apply(state);
    }
    return state;
}

// Full circuit unitary by the same route.
inline CMatrix unitary(const Circuit& c) {
    const std::size_t dim = std::size_t{1} << c.num_qubits();
    CMatrix u = CMatrix::identity(static_cast<int>(dim));
    for (const auto& op : c.ops()) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g)
            throw std::invalid_argument("oracle: gate-only circuits");
        u = full_matrix(c.num_qubits(), *g) * u;
    }
    return u;
}

} // namespace oracle
