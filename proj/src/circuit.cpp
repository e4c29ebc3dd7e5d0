#include "qprop/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qprop/rng.hpp"

namespace qprop {

int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::CP:
            return 2;
        case GateKind::CCX:
            return 3;
        default:
            return 1;
    }
}

int gate_param_count(GateKind k) {
    switch (k) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::P:
        case GateKind::CP:
            return 1;
        case GateKind::U:
            return 3;
        default:
            return 0;
    }
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:    return "h";
        case GateKind::X:    return "x";
        case GateKind::Y:    return "y";
        case GateKind::Z:    return "z";
        case GateKind::S:    return "s";
        case GateKind::Sdg:  return "sdg";
        case GateKind::T:    return "t";
        case GateKind::Tdg:  return "tdg";
        case GateKind::RX:   return "rx";
        case GateKind::RY:   return "ry";
        case GateKind::RZ:   return "rz";
        case GateKind::P:    return "u1";
        case GateKind::U:    return "u3";
        case GateKind::CX:   return "cx";
        case GateKind::CZ:   return "cz";
        case GateKind::SWAP: return "swap";
        case GateKind::CP:   return "cu1";
        case GateKind::CCX:  return "ccx";
    }
    return "?";
}

char basis_name(Basis b) {
    switch (b) {
        case Basis::X: return 'X';
        case Basis::Y: return 'Y';
        case Basis::Z: return 'Z';
    }
    return '?';
}

std::string to_string(const Digest& d) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << d.hi;
    os.width(16);
    os << d.lo;
    return os.str();
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("Circuit: qubit count must be positive");
    if (num_qubits > 20)
        throw std::invalid_argument("Circuit: qubit count exceeds the 20-qubit cap");
    touched_.assign(num_qubits, false);
    measured_.assign(num_qubits, false);
}

std::size_t Circuit::gate_count() const {
    std::size_t n = 0;
    for (const auto& op : ops_)
        if (std::holds_alternative<Gate>(op))
            ++n;
    return n;
}

bool Circuit::has_measurements() const {
    for (const auto& op : ops_)
        if (std::holds_alternative<MeasureOp>(op))
            return true;
    return false;
}

void Circuit::check_gate(const Gate& g) const {
    if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind))
        throw std::invalid_argument(std::string("Circuit: ") + gate_name(g.kind) +
                                    " has wrong operand count");
    if (static_cast<int>(g.params.size()) != gate_param_count(g.kind))
        throw std::invalid_argument(std::string("Circuit: ") + gate_name(g.kind) +
                                    " has wrong parameter count");
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        const int q = g.qubits[i];
        if (q < 0 || q >= num_qubits_)
            throw std::invalid_argument("Circuit: qubit index out of range");
        if (measured_[q])
            throw std::invalid_argument("Circuit: gate after measurement on qubit " +
                                        std::to_string(q));
        for (std::size_t j = i + 1; j < g.qubits.size(); ++j)
            if (g.qubits[j] == q)
                throw std::invalid_argument("Circuit: duplicate qubit operand");
    }
    for (double a : g.params)
        if (!std::isfinite(a))
            throw std::invalid_argument("Circuit: non-finite gate parameter");
}

void Circuit::append_unchecked(CircuitOp op) {
    if (const Gate* g = std::get_if<Gate>(&op)) {
        for (int q : g->qubits)
            touched_[q] = true;
    } else if (const InitializeOp* init = std::get_if<InitializeOp>(&op)) {
        for (int q : init->targets)
            touched_[q] = true;
    } else {
        const MeasureOp& m = std::get<MeasureOp>(op);
        touched_[m.qubit] = true;
        measured_[m.qubit] = true;
    }
    ops_.push_back(std::move(op));
}

Circuit Circuit::with_gate(Gate g) const {
    check_gate(g);
    Circuit out = *this;
    out.append_unchecked(std::move(g));
    return out;
}

Circuit Circuit::with_initialize(const StateVector& state, std::vector<int> targets) const {
    if (targets.empty())
        throw std::invalid_argument("initialize: empty target list");
    if (!std::is_sorted(targets.begin(), targets.end()))
        throw std::invalid_argument("initialize: targets must be sorted ascending");
    for (std::size_t i = 0; i + 1 < targets.size(); ++i)
        if (targets[i] == targets[i + 1])
            throw std::invalid_argument("initialize: duplicate target");
    for (int q : targets) {
        if (q < 0 || q >= num_qubits_)
            throw std::invalid_argument("initialize: qubit index out of range");
        if (touched_[q])
            throw std::invalid_argument("initialize: qubit " + std::to_string(q) +
                                        " already used");
    }
    if (state.num_qubits() != static_cast<int>(targets.size()))
        throw std::invalid_argument("initialize: state dimension does not match target count");
    double norm2 = 0.0;
    for (const cplx& a : state.amplitudes())
        norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw std::invalid_argument("initialize: state is not normalized");

    Circuit out = *this;
    out.append_unchecked(InitializeOp{state.amplitudes(), std::move(targets)});
    return out;
}

Circuit Circuit::with_measure(int qubit, Basis basis, int cbit) const {
    if (qubit < 0 || qubit >= num_qubits_)
        throw std::invalid_argument("measure: qubit index out of range");
    if (measured_[qubit])
        throw std::invalid_argument("measure: qubit already measured");
    if (cbit < 0 || cbit >= num_qubits_)
        throw std::invalid_argument("measure: classical bit out of range");
    for (const auto& op : ops_)
        if (const MeasureOp* m = std::get_if<MeasureOp>(&op))
            if (m->cbit == cbit)
                throw std::invalid_argument("measure: classical bit already used");
    Circuit out = *this;
    out.append_unchecked(MeasureOp{qubit, basis, cbit});
    return out;
}

Circuit Circuit::with_basis_change(int qubit, Basis basis) const {
    if (qubit < 0 || qubit >= num_qubits_)
        throw std::invalid_argument("basis change: qubit index out of range");
    if (measured_[qubit])
        throw std::invalid_argument("basis change: qubit already measured");
    switch (basis) {
        case Basis::Z:
            return *this;
        case Basis::X:
            return h(qubit);
        case Basis::Y:
            return sdg(qubit).h(qubit);
    }
    throw std::logic_error("basis change: bad basis");
}

Circuit Circuit::compose(const Circuit& other, const std::vector<int>* qubit_map) const {
    std::vector<int> map;
    if (qubit_map) {
        map = *qubit_map;
    } else {
        map.resize(other.num_qubits_);
        for (int i = 0; i < other.num_qubits_; ++i)
            map[i] = i;
    }
    if (static_cast<int>(map.size()) != other.num_qubits_)
        throw std::invalid_argument("compose: qubit map size mismatch");
    std::set<int> seen;
    for (int q : map) {
        if (q < 0 || q >= num_qubits_)
            throw std::invalid_argument("compose: mapped qubit out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument("compose: qubit map is not injective");
    }

    Circuit out = *this;
    for (const auto& op : other.ops_) {
        if (const Gate* g = std::get_if<Gate>(&op)) {
            Gate mapped = *g;
            for (int& q : mapped.qubits)
                q = map[q];
            out.check_gate(mapped);
            out.append_unchecked(std::move(mapped));
        } else if (const InitializeOp* init = std::get_if<InitializeOp>(&op)) {
            std::vector<int> mapped;
            mapped.reserve(init->targets.size());
            for (int q : init->targets)
                mapped.push_back(map[q]);
            // Initialize targets are kept sorted; a reordering map permutes
            // the amplitude bit positions accordingly.
            std::vector<std::size_t> order(mapped.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t l, std::size_t r) { return mapped[l] < mapped[r]; });
            std::vector<int> targets(mapped.size());
            for (std::size_t j = 0; j < order.size(); ++j)
                targets[j] = mapped[order[j]];
            std::vector<cplx> amps(init->amplitudes.size());
            for (std::size_t idx = 0; idx < amps.size(); ++idx) {
                std::size_t src = 0;
                for (std::size_t j = 0; j < order.size(); ++j)
                    if (idx & (std::size_t{1} << j))
                        src |= std::size_t{1} << order[j];
                amps[idx] = init->amplitudes[src];
            }
            out = out.with_initialize(StateVector(std::move(amps)), std::move(targets));
        } else {
            const MeasureOp& m = std::get<MeasureOp>(op);
            out = out.with_measure(map[m.qubit], m.basis, m.cbit);
        }
    }
    return out;
}

namespace {

Gate invert_gate(const Gate& g) {
    Gate out = g;
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::CCX:
            return out;
        case GateKind::S:   out.kind = GateKind::Sdg; return out;
        case GateKind::Sdg: out.kind = GateKind::S; return out;
        case GateKind::T:   out.kind = GateKind::Tdg; return out;
        case GateKind::Tdg: out.kind = GateKind::T; return out;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::P:
        case GateKind::CP:
            out.params[0] = -out.params[0];
            return out;
        case GateKind::U:
            // U(theta, phi, lambda)^dagger = U(-theta, -lambda, -phi)
            out.params = {-g.params[0], -g.params[2], -g.params[1]};
            return out;
    }
    throw std::logic_error("invert_gate: bad kind");
}

} // namespace

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        const Gate* g = std::get_if<Gate>(&*it);
        if (!g)
            throw std::invalid_argument("inverse: circuit contains non-gate ops");
        out = out.with_gate(invert_gate(*g));
    }
    return out;
}

namespace {

bool same_op(const CircuitOp& x, const CircuitOp& y) {
    if (x.index() != y.index())
        return false;
    if (const Gate* g = std::get_if<Gate>(&x)) {
        const Gate& h = std::get<Gate>(y);
        if (g->kind != h.kind || g->qubits != h.qubits ||
            g->params.size() != h.params.size())
            return false;
        for (std::size_t i = 0; i < g->params.size(); ++i) {
            std::uint64_t pa, pb;
            std::memcpy(&pa, &g->params[i], sizeof(pa));
            std::memcpy(&pb, &h.params[i], sizeof(pb));
            if (pa != pb)
                return false;
        }
        return true;
    }
    if (const InitializeOp* ia = std::get_if<InitializeOp>(&x)) {
        const InitializeOp& ib = std::get<InitializeOp>(y);
        return ia->targets == ib.targets && ia->amplitudes == ib.amplitudes;
    }
    const MeasureOp& ma = std::get<MeasureOp>(x);
    const MeasureOp& mb = std::get<MeasureOp>(y);
    return ma.qubit == mb.qubit && ma.basis == mb.basis && ma.cbit == mb.cbit;
}

} // namespace

bool operator==(const Circuit& a, const Circuit& b) {
    if (a.num_qubits_ != b.num_qubits_ || a.ops_.size() != b.ops_.size())
        return false;
    for (std::size_t i = 0; i < a.ops_.size(); ++i)
        if (!same_op(a.ops_[i], b.ops_[i]))
            return false;
    return true;
}

void CircuitBuilder::gate(Gate g) {
    circuit_.check_gate(g);
    circuit_.append_unchecked(std::move(g));
}

void CircuitBuilder::initialize(const StateVector& state, std::vector<int> targets) {
    circuit_ = circuit_.with_initialize(state, std::move(targets));
}

void CircuitBuilder::append(const Circuit& other, const std::vector<int>* qubit_map) {
    circuit_ = circuit_.compose(other, qubit_map);
}

namespace {

// Two independent mix chains over the serialized op stream. Parameters are
// hashed by exact bit pattern: dedup must never merge circuits that differ,
// while a spurious mismatch only costs an extra execution.
struct Hash128 {
    std::uint64_t hi = 0x6a09e667f3bcc908ULL;
    std::uint64_t lo = 0xbb67ae8584caa73bULL;
    std::uint64_t count = 0;

    void word(std::uint64_t w) {
        ++count;
        hi = mix64(hi ^ mix64(w + count * 0x9e3779b97f4a7c15ULL));
        lo = mix64(lo + (w ^ count * 0xc2b2ae3d27d4eb4fULL));
    }

    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        word(bits);
    }
};

} // namespace

Digest canonical_hash(const Circuit& c) {
    Hash128 h;
    h.word(0x71c1u);
    h.word(static_cast<std::uint64_t>(c.num_qubits()));
    for (const auto& op : c.ops()) {
        if (const Gate* g = std::get_if<Gate>(&op)) {
            h.word(1);
            h.word(static_cast<std::uint64_t>(g->kind));
            for (int q : g->qubits)
                h.word(static_cast<std::uint64_t>(q));
            for (double a : g->params)
                h.f64(a);
        } else if (const InitializeOp* init = std::get_if<InitializeOp>(&op)) {
            h.word(2);
            h.word(init->targets.size());
            for (int q : init->targets)
                h.word(static_cast<std::uint64_t>(q));
            for (const cplx& a : init->amplitudes) {
                h.f64(a.real());
                h.f64(a.imag());
            }
        } else {
            const MeasureOp& m = std::get<MeasureOp>(op);
            h.word(3);
            h.word(static_cast<std::uint64_t>(m.qubit));
            h.word(static_cast<std::uint64_t>(m.basis));
            h.word(static_cast<std::uint64_t>(m.cbit));
        }
    }
    return Digest{h.hi, h.lo};
}

} // namespace qprop
