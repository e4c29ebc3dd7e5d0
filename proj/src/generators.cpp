#include "qprop/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "qprop/matrix.hpp"
#include "qprop/rng.hpp"
#include "qprop/synthesis.hpp"

namespace qprop {

namespace {

std::string fmt_frac(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

StateVector haar_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(std::size_t{1} << n);
    double norm2 = 0.0;
    for (auto& a : amps) {
        const double re = rng.next_gaussian();
        const double im = rng.next_gaussian();
        a = {re, im};
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps)
        a *= inv;
    return StateVector(std::move(amps));
}

// Ginibre sample followed by modified Gram-Schmidt. MGS yields the unique Q
// with positive-diagonal R, which is Haar for a Ginibre input.
CMatrix haar_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    const int d = 1 << n;
    std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            cols[j][i] = {rng.next_gaussian(), rng.next_gaussian()};

    for (int j = 0; j < d; ++j) {
        // Two orthogonalization passes for numerical safety.
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cplx overlap = 0.0;
                for (int i = 0; i < d; ++i)
                    overlap += std::conj(cols[k][i]) * cols[j][i];
                for (int i = 0; i < d; ++i)
                    cols[j][i] -= overlap * cols[k][i];
            }
        }
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i)
            norm2 += std::norm(cols[j][i]);
        if (norm2 < 1e-20)
            throw std::runtime_error("haar_unitary: degenerate Ginibre sample");
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < d; ++i)
            cols[j][i] *= inv;
    }

    CMatrix u(d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            u.at(i, j) = cols[j][i];
    return u;
}

} // namespace

Circuit phase_oracle(int num_qubits, const std::vector<std::uint64_t>& marked) {
    if (num_qubits < 1 || num_qubits > 6)
        throw std::invalid_argument("phase_oracle: size out of range");
    CircuitBuilder builder(num_qubits);
    for (std::uint64_t s : marked) {
        if (s >= (std::uint64_t{1} << num_qubits))
            throw std::invalid_argument("phase_oracle: marked state out of range");
        // X-conjugate the zero bits, then flip the phase of |1...1> via
        // H - multicontrolled X - H on qubit 0.
        std::vector<int> zero_bits;
        for (int q = 0; q < num_qubits; ++q)
            if (!(s & (std::uint64_t{1} << q)))
                zero_bits.push_back(q);
        for (int q : zero_bits)
            builder.gate(GateKind::X, {}, {q});
        if (num_qubits == 1) {
            builder.gate(GateKind::Z, {}, {0});
        } else {
            std::vector<int> controls;
            for (int q = 1; q < num_qubits; ++q)
                controls.push_back(q);
            builder.gate(GateKind::H, {}, {0});
            emit_mcx(builder, controls, 0);
            builder.gate(GateKind::H, {}, {0});
        }
        for (int q : zero_bits)
            builder.gate(GateKind::X, {}, {q});
    }
    return builder.take();
}

InputGenerator InputGenerator::random_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 20)
        throw std::invalid_argument("random_state: qubit count out of range");
    InputGenerator g(Kind::RandomState,
                     "random_state(n=" + std::to_string(num_qubits) + ")");
    g.num_qubits_ = num_qubits;
    return g;
}

InputGenerator InputGenerator::random_unitary(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 4)
        throw std::invalid_argument("random_unitary: qubit count out of range");
    InputGenerator g(Kind::RandomUnitary,
                     "random_unitary(n=" + std::to_string(num_qubits) + ")");
    g.num_qubits_ = num_qubits;
    return g;
}

InputGenerator InputGenerator::random_int(std::int64_t low, std::int64_t high) {
    if (low > high)
        throw std::invalid_argument("random_int: empty range");
    InputGenerator g(Kind::RandomInt, "random_int(" + std::to_string(low) + "," +
                                          std::to_string(high) + ")");
    g.low_ = low;
    g.high_ = high;
    return g;
}

InputGenerator InputGenerator::grover_oracle(int num_qubits, double min_frac, double max_frac) {
    if (num_qubits < 1 || num_qubits > 6)
        throw std::invalid_argument("grover_oracle: qubit count out of range");
    if (!(0.0 <= min_frac && min_frac <= max_frac && max_frac <= 1.0))
        throw std::invalid_argument("grover_oracle: bad mark range");
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const std::uint64_t lo =
        static_cast<std::uint64_t>(std::ceil(min_frac * static_cast<double>(dim) - 1e-9));
    const std::uint64_t hi =
        static_cast<std::uint64_t>(std::floor(max_frac * static_cast<double>(dim) + 1e-9));
    if (lo > hi)
        throw std::invalid_argument("grover_oracle: no feasible subset size in range");
    InputGenerator g(Kind::GroverOracle,
                     "grover_oracle(n=" + std::to_string(num_qubits) + ",min=" +
                         fmt_frac(min_frac) + ",max=" + fmt_frac(max_frac) + ")");
    g.num_qubits_ = num_qubits;
    g.min_frac_ = min_frac;
    g.max_frac_ = max_frac;
    return g;
}

InputGenerator InputGenerator::ucnot_state_prep(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 20)
        throw std::invalid_argument("ucnot_state_prep: qubit count out of range");
    InputGenerator g(Kind::UcnotStatePrep,
                     "ucnot_state_prep(n=" + std::to_string(num_qubits) + ")");
    g.num_qubits_ = num_qubits;
    return g;
}

InputGenerator InputGenerator::constant_or_balanced(int num_qubits, FunctionKind kind) {
    if (num_qubits < 1 || num_qubits > 19)
        throw std::invalid_argument("constant_or_balanced: qubit count out of range");
    InputGenerator g(Kind::ConstantOrBalanced,
                     std::string("fn_oracle(n=") + std::to_string(num_qubits) + ",kind=" +
                         (kind == FunctionKind::Constant ? "constant" : "balanced") + ")");
    g.num_qubits_ = num_qubits;
    g.fn_kind_ = kind;
    return g;
}

GeneratedValue InputGenerator::generate(std::uint64_t seed) const {
    switch (kind_) {
        case Kind::RandomState:
            return haar_state(num_qubits_, seed);

        case Kind::RandomUnitary: {
            const CMatrix u = haar_unitary(num_qubits_, seed);
            CircuitBuilder builder(num_qubits_);
            std::vector<int> targets(num_qubits_);
            std::iota(targets.begin(), targets.end(), 0);
            emit_unitary(builder, u, targets);
            return builder.take();
        }

        case Kind::RandomInt: {
            Rng rng(seed);
            return rng.next_int(low_, high_);
        }

        case Kind::GroverOracle: {
            Rng rng(seed);
            const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
            const std::uint64_t lo = static_cast<std::uint64_t>(
                std::ceil(min_frac_ * static_cast<double>(dim) - 1e-9));
            const std::uint64_t hi = static_cast<std::uint64_t>(
                std::floor(max_frac_ * static_cast<double>(dim) + 1e-9));
            const std::uint64_t size = lo + rng.next_below(hi - lo + 1);

            std::vector<std::uint64_t> pool(dim);
            std::iota(pool.begin(), pool.end(), 0);
            for (std::uint64_t k = 0; k < size; ++k) {
                const std::uint64_t pick = k + rng.next_below(dim - k);
                std::swap(pool[k], pool[pick]);
            }
            std::vector<std::uint64_t> marked(pool.begin(), pool.begin() + size);
            std::sort(marked.begin(), marked.end());

            Circuit oracle = phase_oracle(num_qubits_, marked);
            return PhaseOracle{std::move(oracle), std::move(marked)};
        }

        case Kind::UcnotStatePrep: {
            Rng rng(seed);
            CircuitBuilder builder(num_qubits_);
            for (int layer = 0; layer < num_qubits_; ++layer) {
                for (int q = 0; q < num_qubits_; ++q) {
                    const double th = rng.next_double() * 2.0 * M_PI;
                    const double ph = rng.next_double() * 2.0 * M_PI;
                    const double la = rng.next_double() * 2.0 * M_PI;
                    builder.gate(GateKind::U, {th, ph, la}, {q});
                }
                if (num_qubits_ >= 2) {
                    const int a = static_cast<int>(rng.next_below(num_qubits_));
                    int b = static_cast<int>(rng.next_below(num_qubits_ - 1));
                    if (b >= a)
                        ++b;
                    builder.gate(GateKind::CX, {}, {a, b});
                }
            }
            return builder.take();
        }

        case Kind::ConstantOrBalanced: {
            Rng rng(seed);
            CircuitBuilder builder(num_qubits_ + 1);
            const int ancilla = num_qubits_;
            if (fn_kind_ == FunctionKind::Constant) {
                const bool flip = rng.next_below(2) == 1;
                if (flip)
                    builder.gate(GateKind::X, {}, {ancilla});
                return FunctionOracle{builder.take(), false, 0, flip};
            }
            const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
            const std::uint64_t mask = 1 + rng.next_below(dim - 1);
            for (int q = 0; q < num_qubits_; ++q)
                if (mask & (std::uint64_t{1} << q))
                    builder.gate(GateKind::CX, {}, {q, ancilla});
            return FunctionOracle{builder.take(), true, mask, false};
        }
    }
    throw std::logic_error("InputGenerator: bad kind");
}

bool marks_less_than_half(int num_qubits, const std::vector<std::uint64_t>& marked) {
    return marked.size() * 2 < (std::uint64_t{1} << num_qubits);
}

} // namespace qprop
