#include "doctest.h"

#include <cmath>

#include "../support/matrix_oracle.hpp"
#include "qprop/rng.hpp"
#include "qprop/simulator.hpp"

using namespace qprop;

namespace {

double max_diff(const StateVector& sv, const std::vector<cplx>& expected) {
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
        worst = std::max(worst, std::abs(sv.amplitudes()[i] - expected[i]));
    return worst;
}

} // namespace

TEST_CASE("textbook states") {
    const double s2 = std::sqrt(0.5);

    const StateVector plus = simulate_statevector(Circuit(1).h(0));
    CHECK(max_diff(plus, {s2, s2}) < 1e-12);

    const StateVector bell = simulate_statevector(Circuit(2).h(0).cx(0, 1));
    CHECK(max_diff(bell, {s2, 0, 0, s2}) < 1e-12);

    CHECK_THROWS_AS(simulate_statevector(Circuit(1).with_measure(0, Basis::Z, 0)),
                    std::invalid_argument);
}

TEST_CASE("every gate kind agrees with the dense matrix oracle") {
    Circuit c = Circuit(3)
                    .h(0).x(1).y(2).z(0).s(1).sdg(2).t(0).tdg(1)
                    .rx(0.3, 0).ry(-0.7, 1).rz(2.1, 2)
                    .p(0.9, 0).u(0.4, 1.1, -2.0, 1)
                    .cx(0, 1).cx(2, 0).cz(1, 2).swap(0, 2).cp(0.8, 2, 1)
                    .ccx(0, 1, 2).ccx(2, 0, 1);
    const std::vector<cplx> expected = oracle::statevector(c);
    const StateVector got = simulate_statevector(c);
    CHECK(max_diff(got, expected) < 1e-12);
}

TEST_CASE("initialize sets the target subspace") {
    const double s2 = std::sqrt(0.5);
    const StateVector psi({s2, cplx{0.0, s2}});
    // Initialize q1 of a 2-qubit register, then entangle.
    const Circuit c = Circuit(2).with_initialize(psi, {1}).h(0);
    const StateVector sv = simulate_statevector(c);
    CHECK(sv.amplitudes()[0].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sv.amplitudes()[2].imag() == doctest::Approx(0.5).epsilon(1e-12));

    // Multi-qubit initialize on a subset of a larger register.
    const StateVector ghz_part({s2, 0, 0, s2});
    const Circuit c2 = Circuit(3).with_initialize(ghz_part, {0, 2});
    const StateVector sv2 = simulate_statevector(c2);
    CHECK(std::abs(sv2.amplitudes()[0]) == doctest::Approx(s2));
    CHECK(std::abs(sv2.amplitudes()[5]) == doctest::Approx(s2));
}

TEST_CASE("norm preservation on random gate words") {
    Rng rng(91);
    for (int trial = 0; trial < 25; ++trial) {
        Circuit c(3);
        for (int g = 0; g < 40; ++g) {
            switch (rng.next_below(6)) {
                case 0: c = c.h(static_cast<int>(rng.next_below(3))); break;
                case 1: c = c.t(static_cast<int>(rng.next_below(3))); break;
                case 2: c = c.rx(rng.next_double() * 6.28, static_cast<int>(rng.next_below(3))); break;
                case 3: {
                    const int a = static_cast<int>(rng.next_below(3));
                    const int b = (a + 1 + static_cast<int>(rng.next_below(2))) % 3;
                    c = c.cx(a, b);
                    break;
                }
                case 4: c = c.u(rng.next_double(), rng.next_double(), rng.next_double(),
                                static_cast<int>(rng.next_below(3)));
                    break;
                default: c = c.cz(0, 1 + static_cast<int>(rng.next_below(2))); break;
            }
        }
        CHECK(std::abs(simulate_statevector(c).norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("marginal distribution") {
    const Circuit bell = Circuit(2).h(0).cx(0, 1);
    const StateVector sv = simulate_statevector(bell);

    const auto m0 = marginal_distribution(sv, {0});
    CHECK(m0[0] == doctest::Approx(0.5));
    CHECK(m0[1] == doctest::Approx(0.5));

    // Marginal over every qubit reproduces |amplitudes|^2.
    const auto all = marginal_distribution(sv, {0, 1});
    CHECK(all[0] == doctest::Approx(0.5));
    CHECK(all[1] == doctest::Approx(0.0));
    CHECK(all[3] == doctest::Approx(0.5));

    // GHZ(3), marginal of {0,1}.
    const Circuit ghz = Circuit(3).h(0).cx(0, 1).cx(1, 2);
    const auto pair = marginal_distribution(simulate_statevector(ghz), {0, 1});
    CHECK(pair[0] == doctest::Approx(0.5));
    CHECK(pair[1] == doctest::Approx(0.0));
    CHECK(pair[3] == doctest::Approx(0.5));

    CHECK_THROWS_AS(marginal_distribution(sv, {0, 0}), std::invalid_argument);
}

TEST_CASE("sampling basics") {
    const Circuit zero = Circuit(1).with_measure(0, Basis::Z, 0);
    const Counts counts = sample_counts(zero, 100, 5);
    CHECK(counts.total_shots == 100);
    CHECK(counts.counts.size() == 1);
    CHECK(counts.counts.at("0") == 100);

    const Circuit bell =
        Circuit(2).h(0).cx(0, 1).with_measure(0, Basis::Z, 0).with_measure(1, Basis::Z, 1);
    const Counts bc = sample_counts(bell, 2000, 17);
    std::uint64_t total = 0;
    for (const auto& [key, n] : bc.counts) {
        CHECK((key == "00" || key == "11")); // zero-probability outcomes never drawn
        total += n;
    }
    CHECK(total == 2000);

    CHECK_THROWS_AS(sample_counts(Circuit(1).h(0), 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_counts(Circuit(1).with_measure(0, Basis::X, 0), 10, 1),
                    std::invalid_argument);
}

TEST_CASE("sampling is deterministic in (circuit, shots, seed)") {
    const Circuit c =
        Circuit(2).h(0).ry(0.3, 1).cx(0, 1).with_measure(0, Basis::Z, 0).with_measure(1, Basis::Z, 1);
    const Counts a = sample_counts(c, 500, 99);
    const Counts b = sample_counts(c, 500, 99);
    CHECK(a.counts == b.counts);
    const Counts other = sample_counts(c, 500, 100);
    CHECK(a.counts != other.counts); // overwhelmingly likely
}

TEST_CASE("binomial envelope on H|0>") {
    // count("0") must land in the exact central 99.99% interval of
    // Binomial(3200, 1/2), computed here from the binomial cdf directly.
    const int n = 3200;
    std::vector<double> pmf(n + 1);
    for (int k = 0; k <= n; ++k)
        pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(n - k + 1.0) - n * std::log(2.0));
    int k_lo = 0, k_hi = n;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        acc += pmf[k];
        if (acc >= 0.5e-4) {
            k_lo = k;
            break;
        }
    }
    acc = 0.0;
    for (int k = n; k >= 0; --k) {
        acc += pmf[k];
        if (acc >= 0.5e-4) {
            k_hi = k;
            break;
        }
    }

    const Circuit c = Circuit(1).h(0).with_measure(0, Basis::Z, 0);
    const Counts counts = sample_counts(c, n, 12345);
    const std::uint64_t zeros = counts.counts.count("0") ? counts.counts.at("0") : 0;
    CHECK(zeros >= static_cast<std::uint64_t>(k_lo));
    CHECK(zeros <= static_cast<std::uint64_t>(k_hi));
}

TEST_CASE("sampling frequencies track exact probabilities") {
    // |freq - p| <= 5 sqrt(p(1-p)/shots) in at least 99% of seeded trials.
    const Circuit c = Circuit(2).ry(1.1, 0).ry(0.4, 1).cx(0, 1)
                          .with_measure(0, Basis::Z, 0)
                          .with_measure(1, Basis::Z, 1);
    const Circuit bare = Circuit(2).ry(1.1, 0).ry(0.4, 1).cx(0, 1);
    const auto probs = marginal_distribution(simulate_statevector(bare), {0, 1});

    const int shots = 400;
    int ok = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const Counts counts = sample_counts(c, shots, 777 + t);
        bool within = true;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            std::string key = "00";
            key[0] = (k & 1) ? '1' : '0';
            key[1] = (k & 2) ? '1' : '0';
            const double freq =
                counts.counts.count(key) ? static_cast<double>(counts.counts.at(key)) / shots : 0.0;
            const double bound = 5.0 * std::sqrt(probs[k] * (1 - probs[k]) / shots);
            if (std::abs(freq - probs[k]) > bound)
                within = false;
        }
        ok += within ? 1 : 0;
    }
    CHECK(ok >= 990);
}
