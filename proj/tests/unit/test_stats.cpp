#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qprop/rng.hpp"
#include "qprop/stats.hpp"

using namespace qprop;

namespace {

// Enumeration oracle for the two-sided Fisher test: hypergeometric point
// probabilities from the multiplicative recurrence, summed over every table
// at most as probable as the observed one. Independent of the log-space
// implementation.
double fisher_oracle(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    const std::int64_t r1 = a + b, r2 = c + d, c1 = a + c, n = a + b + c + d;
    if (r1 == 0 || r2 == 0 || c1 == 0 || c1 == n)
        return 1.0;
    const std::int64_t k_min = std::max<std::int64_t>(0, c1 - r2);
    const std::int64_t k_max = std::min(r1, c1);

    // P(k_min) by direct product, then recurrence
    // P(k+1) = P(k) (r1-k)(c1-k) / ((k+1)(r2-c1+k+1)).
    std::vector<double> probs;
    double p = 1.0;
    // P(k_min) = C(r1,k_min) C(r2,c1-k_min) / C(n,c1) computed as a product
    // of ratios to stay in range.
    {
        // Use logs from std::lgamma only for the anchor; the oracle's
        // structure (enumeration + recurrence) stays independent.
        const auto lc = [](std::int64_t nn, std::int64_t kk) {
            return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
        };
        p = std::exp(lc(r1, k_min) + lc(r2, c1 - k_min) - lc(n, c1));
    }
    for (std::int64_t k = k_min;; ++k) {
        probs.push_back(p);
        if (k == k_max)
            break;
        p = p * static_cast<double>((r1 - k) * (c1 - k)) /
            static_cast<double>((k + 1) * (r2 - c1 + k + 1));
    }
    const double observed = probs[static_cast<std::size_t>(a - k_min)];
    double total = 0.0;
    for (double q : probs)
        if (q <= observed * (1.0 + 1e-7))
            total += q;
    return std::min(total, 1.0);
}

// Step-down oracle, straight from the definition.
std::vector<bool> holm_oracle(const std::vector<double>& ps, double alpha) {
    const std::size_t m = ps.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return ps[l] < ps[r]; });
    std::vector<bool> rejected(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        if (ps[order[k]] <= alpha / static_cast<double>(m - k))
            rejected[order[k]] = true;
        else
            break;
    }
    return rejected;
}

} // namespace

TEST_CASE("fisher on symmetric and extreme tables") {
    CHECK(fisher_exact_two_sided({5, 5, 5, 5}) == doctest::Approx(1.0));

    // [[10,0],[0,10]]: p = 2 / C(20,10)
    const double extreme = fisher_exact_two_sided({10, 0, 0, 10});
    CHECK(extreme == doctest::Approx(2.0 / 184756.0).epsilon(1e-10));

    // Degenerate margins admit a single table.
    CHECK(fisher_exact_two_sided({100, 0, 100, 0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(fisher_exact_two_sided({0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(fisher_exact_two_sided({-1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("fisher matches the enumeration oracle on random tables") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t a = static_cast<std::int64_t>(rng.next_below(51));
        const std::int64_t b = static_cast<std::int64_t>(rng.next_below(51));
        const std::int64_t c = static_cast<std::int64_t>(rng.next_below(51));
        const std::int64_t d = static_cast<std::int64_t>(rng.next_below(51));
        if (a + b + c + d == 0)
            continue;
        const double got = fisher_exact_two_sided({a, b, c, d});
        const double want = fisher_oracle(a, b, c, d);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("fisher row and column swap invariance") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t a = static_cast<std::int64_t>(rng.next_below(40));
        const std::int64_t b = static_cast<std::int64_t>(rng.next_below(40));
        const std::int64_t c = static_cast<std::int64_t>(rng.next_below(40));
        const std::int64_t d = static_cast<std::int64_t>(1 + rng.next_below(40));
        const double base = fisher_exact_two_sided({a, b, c, d});
        CHECK(fisher_exact_two_sided({c, d, a, b}) == doctest::Approx(base).epsilon(1e-12));
        CHECK(fisher_exact_two_sided({b, a, d, c}) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("holm step-down on the worked example") {
    // p = {0.01, 0.03, 0.04} at alpha 0.05: only 0.01 is rejected; the
    // thresholds faced are alpha/3, alpha/2, alpha.
    const HolmResult r = holm_bonferroni({0.01, 0.03, 0.04}, 0.05);
    CHECK(r.rejected[0]);
    CHECK_FALSE(r.rejected[1]);
    CHECK_FALSE(r.rejected[2]);
    CHECK(r.thresholds[0] == doctest::Approx(0.05 / 3));
    CHECK(r.thresholds[1] == doctest::Approx(0.025));
    CHECK(r.thresholds[2] == doctest::Approx(0.05));
    CHECK(r.num_rejected == 1);
}

TEST_CASE("holm edge cases") {
    CHECK(holm_bonferroni({}, 0.05).num_rejected == 0);
    const HolmResult ones = holm_bonferroni({1.0, 1.0, 1.0}, 0.05);
    CHECK(ones.num_rejected == 0);
}

TEST_CASE("holm agrees with the definition on random families") {
    Rng rng(5150);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = rng.next_below(40);
        std::vector<double> ps;
        for (std::size_t i = 0; i < m; ++i) {
            double p = rng.next_double();
            if (rng.next_below(4) == 0)
                p = std::round(p * 10) / 10; // force ties
            ps.push_back(p);
        }
        const auto got = holm_bonferroni(ps, 0.05);
        const auto want = holm_oracle(ps, 0.05);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(got.rejected[i] == want[i]);
    }
}

TEST_CASE("holm monotonicity properties") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng.next_below(20);
        std::vector<double> ps;
        for (std::size_t i = 0; i < m; ++i)
            ps.push_back(rng.next_double());

        // Lowering alpha never adds rejections.
        const auto strict = holm_bonferroni(ps, 0.01);
        const auto loose = holm_bonferroni(ps, 0.05);
        for (std::size_t i = 0; i < m; ++i)
            if (strict.rejected[i])
                CHECK(loose.rejected[i]);

        // Adding a p = 1.0 test never promotes a previously accepted test.
        std::vector<double> extended = ps;
        extended.push_back(1.0);
        const auto ext = holm_bonferroni(extended, 0.05);
        for (std::size_t i = 0; i < m; ++i)
            if (ext.rejected[i])
                CHECK(loose.rejected[i]);
        CHECK_FALSE(ext.rejected[m]);
    }
}

TEST_CASE("binomial two-sided test") {
    CHECK(binomial_two_sided(0, 100, 0.0) == doctest::Approx(1.0));
    CHECK(binomial_two_sided(5, 100, 0.0) == doctest::Approx(0.0));
    CHECK(binomial_two_sided(100, 100, 1.0) == doctest::Approx(1.0));

    // Symmetric case: two-sided p of k successes at p0 = 1/2 equals the
    // doubled tail by symmetry of the pmf.
    const double p = binomial_two_sided(40, 100, 0.5);
    double tail = 0.0;
    for (int k = 0; k <= 40; ++k)
        tail += std::exp(std::lgamma(101.0) - std::lgamma(k + 1.0) - std::lgamma(101.0 - k) -
                         100.0 * std::log(2.0));
    CHECK(p == doctest::Approx(2 * tail).epsilon(1e-9));

    CHECK_THROWS_AS(binomial_two_sided(5, 4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(binomial_two_sided(1, 4, 1.5), std::invalid_argument);
}

TEST_CASE("student t tails against closed forms") {
    // df = 1 is Cauchy: P(|T| > t) = 1 - (2/pi) atan(t).
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const double want = 1.0 - 2.0 / M_PI * std::atan(t);
        CHECK(student_t_two_sided(t, 1) == doctest::Approx(want).epsilon(1e-9));
    }
    // df = 2: P(|T| > t) = 1 - t / sqrt(t^2 + 2).
    for (double t : {0.3, 1.0, 2.0, 4.0}) {
        const double want = 1.0 - t / std::sqrt(t * t + 2.0);
        CHECK(student_t_two_sided(t, 2) == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK(student_t_two_sided(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("spearman on monotone data") {
    const std::vector<double> xs = {1, 2, 3, 4, 5, 6};
    std::vector<double> up = {2, 4, 5, 7, 11, 13};
    auto r = spearman_rank(xs, up);
    CHECK(r.defined);
    CHECK(r.r == doctest::Approx(1.0));
    CHECK(r.p == doctest::Approx(0.0));

    std::vector<double> down(up.rbegin(), up.rend());
    r = spearman_rank(xs, down);
    CHECK(r.r == doctest::Approx(-1.0));

    const std::vector<double> flat = {3, 3, 3, 3, 3, 3};
    CHECK_FALSE(spearman_rank(xs, flat).defined);
    CHECK_THROWS_AS(spearman_rank({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("spearman matches a rank-then-pearson oracle") {
    Rng rng(444);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 5 + rng.next_below(30);
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse grids produce ties.
            xs.push_back(std::floor(rng.next_double() * 8));
            ys.push_back(std::floor(rng.next_double() * 8));
        }

        // Oracle: mid-ranks by sorting, then the Pearson formula.
        const auto ranks = [](const std::vector<double>& v) {
            std::vector<std::size_t> order(v.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t l, std::size_t r) { return v[l] < v[r]; });
            std::vector<double> out(v.size());
            std::size_t i = 0;
            while (i < v.size()) {
                std::size_t j = i;
                while (j + 1 < v.size() && v[order[j + 1]] == v[order[i]])
                    ++j;
                for (std::size_t k = i; k <= j; ++k)
                    out[order[k]] = (i + j) / 2.0 + 1.0;
                i = j + 1;
            }
            return out;
        };
        const auto rx = ranks(xs);
        const auto ry = ranks(ys);
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += rx[i];
            my += ry[i];
        }
        mx /= n;
        my /= n;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (rx[i] - mx) * (ry[i] - my);
            sxx += (rx[i] - mx) * (rx[i] - mx);
            syy += (ry[i] - my) * (ry[i] - my);
        }
        if (sxx == 0 || syy == 0)
            continue;
        const double want = sxy / std::sqrt(sxx * syy);

        const auto got = spearman_rank(xs, ys);
        REQUIRE(got.defined);
        CHECK(got.r == doctest::Approx(want).epsilon(1e-12));
    }
}
