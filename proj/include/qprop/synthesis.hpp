#pragma once

#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/matrix.hpp"

namespace qprop {

/// ZYZ Euler decomposition of a 2x2 unitary:
/// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
    double alpha, beta, gamma, delta;
};

ZyzAngles zyz_decompose(const CMatrix& u);

/// Principal square root of a 2x2 unitary (Cayley-Hamilton form).
CMatrix sqrt_unitary_2x2(const CMatrix& u);

/// Emits gates realizing the 2x2 unitary exactly, including global phase.
void emit_unitary_1q(CircuitBuilder& builder, const CMatrix& u, int target);

/// Multi-controlled X, all controls taken at |1>. Uses X/CX/CCX directly for
/// up to two controls and the ancilla-free recursive construction beyond.
void emit_mcx(CircuitBuilder& builder, const std::vector<int>& controls, int target);

/// Multi-controlled 2x2 unitary, all controls taken at |1>.
void emit_mcu(CircuitBuilder& builder, const std::vector<int>& controls, int target,
              const CMatrix& u);

/// Emits gates realizing an arbitrary 2^k x 2^k unitary on `targets`
/// (targets[0] carries the least significant bit of the matrix index),
/// optionally under additional |1> controls. Two-level reduction with
/// Gray-code routing; exact up to floating-point rounding.
void emit_unitary(CircuitBuilder& builder, const CMatrix& u, const std::vector<int>& targets,
                  const std::vector<int>& extra_controls = {});

/// Full unitary matrix of a gate-only circuit (dim 2^n). Rejects circuits
/// with initialization or measurement ops.
CMatrix circuit_unitary(const Circuit& c);

} // namespace qprop
