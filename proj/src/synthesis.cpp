#include "qprop/synthesis.hpp"

#include <cmath>
#include <stdexcept>

#include "qprop/simulator.hpp"

namespace qprop {

namespace {

constexpr double kNegligible = 1e-14;

void check_2x2(const CMatrix& u) {
    if (u.dim() != 2)
        throw std::invalid_argument("synthesis: expected a 2x2 matrix");
}

} // namespace

ZyzAngles zyz_decompose(const CMatrix& u) {
    check_2x2(u);
    const cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
    const double alpha = std::arg(det) / 2.0;
    const cplx scale = std::exp(cplx{0.0, -alpha});
    const cplx v00 = scale * u.at(0, 0);
    const cplx v10 = scale * u.at(1, 0);

    const double c = std::abs(v00);
    const double s = std::abs(v10);
    const double gamma = 2.0 * std::atan2(s, c);

    double beta, delta;
    if (s < kNegligible) {
        beta = -2.0 * std::arg(v00);
        delta = 0.0;
    } else if (c < kNegligible) {
        beta = 2.0 * std::arg(v10);
        delta = 0.0;
    } else {
        beta = std::arg(v10) - std::arg(v00);
        delta = -(std::arg(v10) + std::arg(v00));
    }
    return {alpha, beta, gamma, delta};
}

CMatrix sqrt_unitary_2x2(const CMatrix& u) {
    check_2x2(u);
    const cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
    const cplx sqrt_det = std::exp(cplx{0.0, std::arg(det) / 2.0});
    const cplx tr = u.at(0, 0) + u.at(1, 1);
    const cplx denom2 = tr + 2.0 * sqrt_det;
    if (std::abs(denom2) < 1e-8) {
        // U is a scalar multiple of the identity with that scalar opposite
        // to sqrt_det; take the principal root directly.
        const cplx lambda = u.at(0, 0);
        CMatrix out(2);
        out.at(0, 0) = out.at(1, 1) = std::exp(cplx{0.0, std::arg(lambda) / 2.0});
        return out;
    }
    const cplx denom = std::sqrt(denom2);
    CMatrix out(2);
    out.at(0, 0) = (u.at(0, 0) + sqrt_det) / denom;
    out.at(0, 1) = u.at(0, 1) / denom;
    out.at(1, 0) = u.at(1, 0) / denom;
    out.at(1, 1) = (u.at(1, 1) + sqrt_det) / denom;
    return out;
}

void emit_unitary_1q(CircuitBuilder& builder, const CMatrix& u, int target) {
    // Rz(b) Ry(g) Rz(d) = e^{-i(b+d)/2} U(g, b, d), so the whole matrix is a
    // single U gate plus a residual global phase.
    const ZyzAngles a = zyz_decompose(u);
    const double phase = a.alpha - (a.beta + a.delta) / 2.0;
    if (std::abs(a.gamma) > kNegligible || std::abs(a.beta) > kNegligible ||
        std::abs(a.delta) > kNegligible)
        builder.gate(GateKind::U, {a.gamma, a.beta, a.delta}, {target});
    if (std::abs(phase) > kNegligible) {
        // diag(e^{ip}, e^{ip}) as X P(p) X P(p).
        builder.gate(GateKind::P, {phase}, {target});
        builder.gate(GateKind::X, {}, {target});
        builder.gate(GateKind::P, {phase}, {target});
        builder.gate(GateKind::X, {}, {target});
    }
}

namespace {

// Controlled 2x2 unitary via the ABC decomposition:
// U = e^{ia} A X B X C with A B C = I.
void emit_controlled_u(CircuitBuilder& builder, int control, int target, const CMatrix& u) {
    const ZyzAngles an = zyz_decompose(u);
    const double c_angle = (an.delta - an.beta) / 2.0;
    const double b_rz = -(an.delta + an.beta) / 2.0;

    if (std::abs(c_angle) > kNegligible)
        builder.gate(GateKind::RZ, {c_angle}, {target});
    builder.gate(GateKind::CX, {}, {control, target});
    if (std::abs(b_rz) > kNegligible)
        builder.gate(GateKind::RZ, {b_rz}, {target});
    if (std::abs(an.gamma) > kNegligible)
        builder.gate(GateKind::RY, {-an.gamma / 2.0}, {target});
    builder.gate(GateKind::CX, {}, {control, target});
    if (std::abs(an.gamma) > kNegligible)
        builder.gate(GateKind::RY, {an.gamma / 2.0}, {target});
    if (std::abs(an.beta) > kNegligible)
        builder.gate(GateKind::RZ, {an.beta}, {target});
    if (std::abs(an.alpha) > kNegligible)
        builder.gate(GateKind::P, {an.alpha}, {control});
}

CMatrix x_matrix() {
    CMatrix x(2);
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    return x;
}

} // namespace

void emit_mcu(CircuitBuilder& builder, const std::vector<int>& controls, int target,
              const CMatrix& u) {
    check_2x2(u);
    if (controls.empty()) {
        emit_unitary_1q(builder, u, target);
        return;
    }
    if (controls.size() == 1) {
        emit_controlled_u(builder, controls[0], target, u);
        return;
    }
    // Ancilla-free recursion: C^k(U) from C(V), C^{k-1}(X) and C^{k-1}(V)
    // with V^2 = U.
    const CMatrix v = sqrt_unitary_2x2(u);
    const CMatrix v_dag = v.adjoint();
    const int last = controls.back();
    const std::vector<int> rest(controls.begin(), controls.end() - 1);

    emit_controlled_u(builder, last, target, v);
    emit_mcx(builder, rest, last);
    emit_controlled_u(builder, last, target, v_dag);
    emit_mcx(builder, rest, last);
    emit_mcu(builder, rest, target, v);
}

void emit_mcx(CircuitBuilder& builder, const std::vector<int>& controls, int target) {
    switch (controls.size()) {
        case 0:
            builder.gate(GateKind::X, {}, {target});
            return;
        case 1:
            builder.gate(GateKind::CX, {}, {controls[0], target});
            return;
        case 2:
            builder.gate(GateKind::CCX, {}, {controls[0], controls[1], target});
            return;
        default:
            emit_mcu(builder, controls, target, x_matrix());
            return;
    }
}

namespace {

struct TwoLevelFactor {
    std::size_t s1; // local basis state, block row 0
    std::size_t s2; // local basis state, block row 1
    CMatrix block;  // 2x2
};

// Controls for pinning every non-target local bit to the given state's
// value. Zero-valued bits get X conjugation.
void emit_pinned_mcu(CircuitBuilder& builder, const std::vector<int>& targets,
                     const std::vector<int>& extra_controls, std::size_t state,
                     std::size_t free_bit, const CMatrix& u, bool as_x) {
    std::vector<int> controls;
    std::vector<int> zero_wrapped;
    for (std::size_t p = 0; p < targets.size(); ++p) {
        if (p == free_bit)
            continue;
        controls.push_back(targets[p]);
        if (!(state & (std::size_t{1} << p)))
            zero_wrapped.push_back(targets[p]);
    }
    controls.insert(controls.end(), extra_controls.begin(), extra_controls.end());

    for (int q : zero_wrapped)
        builder.gate(GateKind::X, {}, {q});
    if (as_x)
        emit_mcx(builder, controls, targets[free_bit]);
    else
        emit_mcu(builder, controls, targets[free_bit], u);
    for (int q : zero_wrapped)
        builder.gate(GateKind::X, {}, {q});
}

void emit_two_level(CircuitBuilder& builder, const std::vector<int>& targets,
                    const std::vector<int>& extra_controls, const TwoLevelFactor& f) {
    const std::size_t s1 = f.s1, s2 = f.s2;
    const std::size_t diff = s1 ^ s2;
    std::vector<std::size_t> bits;
    for (std::size_t p = 0; p < targets.size(); ++p)
        if (diff & (std::size_t{1} << p))
            bits.push_back(p);

    // s1 < s2, so s1 holds 0 at the most significant differing bit; that
    // orientation matches the block's row order.
    const std::size_t pivot_bit = bits.back();

    if (bits.size() == 1) {
        emit_pinned_mcu(builder, targets, extra_controls, s1, pivot_bit, f.block, false);
        return;
    }

    // Gray-code route: walk s1 across the lower differing bits so the pair
    // ends up one bit flip apart, apply the pinned block, then unwalk.
    std::vector<std::size_t> path;
    std::size_t g = s1;
    for (std::size_t q = 0; q + 1 < bits.size(); ++q) {
        path.push_back(g);
        emit_pinned_mcu(builder, targets, extra_controls, g, bits[q], f.block, true);
        g ^= std::size_t{1} << bits[q];
    }
    emit_pinned_mcu(builder, targets, extra_controls, g, pivot_bit, f.block, false);
    for (std::size_t q = bits.size() - 1; q-- > 0;)
        emit_pinned_mcu(builder, targets, extra_controls, path[q], bits[q], f.block, true);
}

} // namespace

void emit_unitary(CircuitBuilder& builder, const CMatrix& u, const std::vector<int>& targets,
                  const std::vector<int>& extra_controls) {
    const std::size_t d = std::size_t{1} << targets.size();
    if (static_cast<std::size_t>(u.dim()) != d)
        throw std::invalid_argument("emit_unitary: matrix size does not match target count");
    if (!u.is_unitary(1e-9))
        throw std::invalid_argument("emit_unitary: matrix is not unitary");

    if (targets.size() == 1 && extra_controls.empty()) {
        emit_unitary_1q(builder, u, targets[0]);
        return;
    }
    if (targets.size() == 1) {
        emit_mcu(builder, extra_controls, targets[0], u);
        return;
    }

    // Reduce to the identity with two-level Givens factors:
    // G_m ... G_1 U = diag(1, ..., 1, e^{i phi})  =>  U = G_1^H ... G_m^H D.
    CMatrix m = u;
    std::vector<TwoLevelFactor> factors;
    for (std::size_t col = 0; col + 1 < d; ++col) {
        for (std::size_t row = col + 1; row < d; ++row) {
            const cplx b = m.at(static_cast<int>(row), static_cast<int>(col));
            if (std::abs(b) < kNegligible)
                continue;
            const cplx a = m.at(static_cast<int>(col), static_cast<int>(col));
            const double r = std::sqrt(std::norm(a) + std::norm(b));
            const cplx g00 = std::conj(a) / r;
            const cplx g01 = std::conj(b) / r;
            const cplx g10 = -b / r;
            const cplx g11 = a / r;
            // Apply G to rows (col, row) of m.
            for (std::size_t j = col; j < d; ++j) {
                const cplx top = m.at(static_cast<int>(col), static_cast<int>(j));
                const cplx bot = m.at(static_cast<int>(row), static_cast<int>(j));
                m.at(static_cast<int>(col), static_cast<int>(j)) = g00 * top + g01 * bot;
                m.at(static_cast<int>(row), static_cast<int>(j)) = g10 * top + g11 * bot;
            }
            CMatrix block(2);
            block.at(0, 0) = std::conj(g00);
            block.at(0, 1) = std::conj(g10);
            block.at(1, 0) = std::conj(g01);
            block.at(1, 1) = std::conj(g11);
            factors.push_back(TwoLevelFactor{col, row, std::move(block)});
        }
    }

    // Residual diagonal phase on |1...1>.
    const double phi = std::arg(m.at(static_cast<int>(d) - 1, static_cast<int>(d) - 1));
    if (std::abs(phi) > kNegligible) {
        CMatrix phase(2);
        phase.at(0, 0) = 1.0;
        phase.at(1, 1) = std::exp(cplx{0.0, phi});
        std::vector<int> controls(targets.begin() + 1, targets.end());
        controls.insert(controls.end(), extra_controls.begin(), extra_controls.end());
        emit_mcu(builder, controls, targets[0], phase);
    }

    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
        emit_two_level(builder, targets, extra_controls, *it);
}

CMatrix circuit_unitary(const Circuit& c) {
    for (const auto& op : c.ops())
        if (!std::holds_alternative<Gate>(op))
            throw std::invalid_argument("circuit_unitary: circuit must be gate-only");
    const std::size_t d = std::size_t{1} << c.num_qubits();
    CMatrix out(static_cast<int>(d));
    for (std::size_t col = 0; col < d; ++col) {
        Circuit prep(c.num_qubits());
        for (int q = 0; q < c.num_qubits(); ++q)
            if (col & (std::size_t{1} << q))
                prep = prep.x(q);
        const StateVector res = simulate_statevector(prep.compose(c));
        for (std::size_t row = 0; row < d; ++row)
            out.at(static_cast<int>(row), static_cast<int>(col)) = res.amplitudes()[row];
    }
    return out;
}

} // namespace qprop
