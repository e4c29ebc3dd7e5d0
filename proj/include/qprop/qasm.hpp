#pragma once

#include <stdexcept>
#include <string>

#include "qprop/circuit.hpp"

namespace qprop {

struct QasmParseError : std::runtime_error {
    QasmParseError(int line, int column, const std::string& message)
        : std::runtime_error("qasm:" + std::to_string(line) + ":" + std::to_string(column) +
                             ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

/// Serializes a gate circuit to the QASM 2.0 subset: one qreg, one creg,
/// gates {h,x,y,z,s,sdg,t,tdg,rx,ry,rz,u1,u3,cx,cz,swap,ccx,cu1} and
/// `measure q[i] -> c[j];`. Angles print with enough digits to round-trip
/// exactly. Circuits containing initialization are rejected: QASM 2.0 has no
/// state-preparation primitive, and synthesizing one silently would break
/// the round-trip digest guarantee.
std::string to_qasm(const Circuit& c);

/// Parses the subset emitted by to_qasm. Angle expressions may use numeric
/// literals, pi, parentheses and + - * /. Errors carry line and column.
Circuit from_qasm(const std::string& text);

} // namespace qprop
