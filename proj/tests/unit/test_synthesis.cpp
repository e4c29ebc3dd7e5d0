#include "doctest.h"

#include <cmath>

#include "../support/matrix_oracle.hpp"
#include "qprop/rng.hpp"
#include "qprop/synthesis.hpp"

using namespace qprop;

namespace {

CMatrix random_unitary_matrix(int dim, std::uint64_t seed) {
    Rng rng(seed);
    // Ginibre + classical Gram-Schmidt, local to the tests.
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (auto& col : cols)
        for (auto& v : col)
            v = {rng.next_gaussian(), rng.next_gaussian()};
    for (int j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) {
                cplx ov = 0;
                for (int i = 0; i < dim; ++i)
                    ov += std::conj(cols[k][i]) * cols[j][i];
                for (int i = 0; i < dim; ++i)
                    cols[j][i] -= ov * cols[k][i];
            }
        double norm = 0;
        for (int i = 0; i < dim; ++i)
            norm += std::norm(cols[j][i]);
        norm = std::sqrt(norm);
        for (int i = 0; i < dim; ++i)
            cols[j][i] /= norm;
    }
    CMatrix u(dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            u.at(i, j) = cols[j][i];
    return u;
}

CMatrix matrix_of(const Circuit& c) {
    return oracle::unitary(c);
}

} // namespace

TEST_CASE("zyz reconstructs the matrix") {
    for (int trial = 0; trial < 40; ++trial) {
        const CMatrix u = random_unitary_matrix(2, 100 + trial);
        const ZyzAngles a = zyz_decompose(u);
        // Rebuild e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
        const cplx i{0, 1};
        CMatrix rz1(2), ry(2), rz2(2);
        rz1.at(0, 0) = std::exp(-i * (a.beta / 2));
        rz1.at(1, 1) = std::exp(i * (a.beta / 2));
        ry.at(0, 0) = std::cos(a.gamma / 2);
        ry.at(0, 1) = -std::sin(a.gamma / 2);
        ry.at(1, 0) = std::sin(a.gamma / 2);
        ry.at(1, 1) = std::cos(a.gamma / 2);
        rz2.at(0, 0) = std::exp(-i * (a.delta / 2));
        rz2.at(1, 1) = std::exp(i * (a.delta / 2));
        CMatrix rebuilt = rz1 * ry * rz2;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                rebuilt.at(r, c) *= std::exp(i * a.alpha);
        CHECK(CMatrix::max_abs_diff(rebuilt, u) < 1e-12);
    }
}

TEST_CASE("sqrt of a 2x2 unitary squares back") {
    for (int trial = 0; trial < 40; ++trial) {
        const CMatrix u = random_unitary_matrix(2, 500 + trial);
        const CMatrix v = sqrt_unitary_2x2(u);
        CHECK(v.is_unitary(1e-10));
        CHECK(CMatrix::max_abs_diff(v * v, u) < 1e-10);
    }
    // X, Z and scalar matrices hit the special branches.
    CMatrix x(2);
    x.at(0, 1) = x.at(1, 0) = 1;
    CHECK(CMatrix::max_abs_diff(sqrt_unitary_2x2(x) * sqrt_unitary_2x2(x), x) < 1e-12);
    CMatrix mi(2);
    mi.at(0, 0) = mi.at(1, 1) = cplx{-1, 0};
    CHECK(CMatrix::max_abs_diff(sqrt_unitary_2x2(mi) * sqrt_unitary_2x2(mi), mi) < 1e-12);
}

TEST_CASE("single-qubit emission is one U gate plus a global phase, exact") {
    for (int trial = 0; trial < 25; ++trial) {
        const CMatrix u = random_unitary_matrix(2, 900 + trial);
        CircuitBuilder b(1);
        emit_unitary_1q(b, u, 0);
        const Circuit c = b.take();
        CHECK(CMatrix::max_abs_diff(matrix_of(c), u) < 1e-10);
        REQUIRE(!c.ops().empty());
        CHECK(std::get<Gate>(c.ops()[0]).kind == GateKind::U);
        CHECK(c.gate_count() <= 5); // U plus the four phase gates
    }
}

TEST_CASE("multi-controlled gates against controlled matrices") {
    for (int controls = 1; controls <= 3; ++controls) {
        for (int trial = 0; trial < 8; ++trial) {
            const CMatrix u = random_unitary_matrix(2, 40 * controls + trial);
            const int n = controls + 1;
            CircuitBuilder b(n);
            std::vector<int> ctl;
            for (int q = 1; q <= controls; ++q)
                ctl.push_back(q);
            emit_mcu(b, ctl, 0, u);
            const CMatrix got = matrix_of(b.take());

            // Expected: identity except the all-controls-on block.
            CMatrix want = CMatrix::identity(1 << n);
            std::size_t mask = 0;
            for (int q : ctl)
                mask |= std::size_t{1} << q;
            const std::size_t lo = mask;           // target bit 0 clear
            const std::size_t hi = mask | 1;       // target bit 0 set
            want.at(lo, lo) = u.at(0, 0);
            want.at(lo, hi) = u.at(0, 1);
            want.at(hi, lo) = u.at(1, 0);
            want.at(hi, hi) = u.at(1, 1);
            CHECK(CMatrix::max_abs_diff(got, want) < 1e-9);
        }
    }
}

TEST_CASE("emit_mcx flips only the all-ones subspace") {
    for (int controls = 0; controls <= 4; ++controls) {
        const int n = controls + 1;
        CircuitBuilder b(n);
        std::vector<int> ctl;
        for (int q = 1; q <= controls; ++q)
            ctl.push_back(q);
        emit_mcx(b, ctl, 0);
        const CMatrix got = matrix_of(b.take());
        CMatrix want = CMatrix::identity(1 << n);
        std::size_t mask = 0;
        for (int q : ctl)
            mask |= std::size_t{1} << q;
        want.at(mask, mask) = 0;
        want.at(mask | 1, mask | 1) = 0;
        want.at(mask, mask | 1) = 1;
        want.at(mask | 1, mask) = 1;
        CHECK(CMatrix::max_abs_diff(got, want) < 1e-9);
    }
}

TEST_CASE("general unitary synthesis matches the sample") {
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < (n == 3 ? 3 : 6); ++trial) {
            const CMatrix u = random_unitary_matrix(1 << n, 7000 + 10 * n + trial);
            CircuitBuilder b(n);
            std::vector<int> targets;
            for (int q = 0; q < n; ++q)
                targets.push_back(q);
            emit_unitary(b, u, targets);
            const Circuit c = b.take();
            CHECK(CMatrix::max_abs_diff(matrix_of(c), u) < 1e-8);
        }
    }
}

TEST_CASE("synthesis with an extra control leaves the off subspace alone") {
    const CMatrix u = random_unitary_matrix(4, 31337);
    CircuitBuilder b(3);
    emit_unitary(b, u, {0, 1}, {2});
    const CMatrix got = matrix_of(b.take());

    // Identity on the control-off half, u on the control-on block (control
    // is qubit 2, so the block lives at indices with bit 2 set).
    CMatrix want = CMatrix::identity(8);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            want.at(r | 4, c | 4) = u.at(r, c);
    CHECK(CMatrix::max_abs_diff(got, want) < 1e-8);
}

TEST_CASE("circuit_unitary rejects non-gate ops") {
    CHECK_THROWS_AS(circuit_unitary(Circuit(1).with_measure(0, Basis::Z, 0)),
                    std::invalid_argument);
}
