#include "qprop/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qprop {

namespace {

// Table sized for the documented contract (table totals up to 20,000),
// built once; lookups after that are lock-free. Larger arguments fall back
// to lgamma under a lock, which only matters for unusually large shot
// counts.
constexpr std::size_t kLogFactTableSize = 20001;

const std::vector<double>& lf_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactTableSize);
        t[0] = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i)
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    return table;
}

double log_factorial_slow(std::int64_t n) {
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(std::int64_t n, std::int64_t k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Relative slack when comparing point probabilities in the minlike
// two-sided rule, preventing float rounding from excluding ties.
constexpr double kTieSlack = 1e-7;

} // namespace

double log_factorial(std::int64_t n) {
    if (n < 0)
        throw std::invalid_argument("log_factorial: negative argument");
    if (static_cast<std::size_t>(n) < kLogFactTableSize)
        return lf_table()[static_cast<std::size_t>(n)];
    return log_factorial_slow(n);
}

double fisher_exact_two_sided(const ContingencyTable& t) {
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0)
        throw std::invalid_argument("fisher: negative count");
    if (t.a + t.b + t.c + t.d == 0)
        throw std::invalid_argument("fisher: all-zero table");

    const std::int64_t r1 = t.a + t.b;
    const std::int64_t r2 = t.c + t.d;
    const std::int64_t c1 = t.a + t.c;
    const std::int64_t n = r1 + r2;

    // Degenerate margins admit a single table.
    if (r1 == 0 || r2 == 0 || c1 == 0 || c1 == n)
        return 1.0;

    const double log_denom = log_choose(n, c1);
    const auto log_p = [&](std::int64_t k) {
        return log_choose(r1, k) + log_choose(r2, c1 - k) - log_denom;
    };

    const double log_obs = log_p(t.a) + std::log1p(kTieSlack);
    const std::int64_t k_min = std::max<std::int64_t>(0, c1 - r2);
    const std::int64_t k_max = std::min(r1, c1);

    double total = 0.0;
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        const double lp = log_p(k);
        if (lp <= log_obs)
            total += std::exp(lp);
    }
    return std::min(total, 1.0);
}

double binomial_two_sided(std::int64_t successes, std::int64_t n, double p0) {
    if (n < 1)
        throw std::invalid_argument("binomial test: n must be positive");
    if (successes < 0 || successes > n)
        throw std::invalid_argument("binomial test: successes out of range");
    if (p0 < 0.0 || p0 > 1.0)
        throw std::invalid_argument("binomial test: probability outside [0,1]");

    if (p0 == 0.0)
        return successes == 0 ? 1.0 : 0.0;
    if (p0 == 1.0)
        return successes == n ? 1.0 : 0.0;

    const double log_p0 = std::log(p0);
    const double log_q0 = std::log1p(-p0);
    const auto log_pmf = [&](std::int64_t k) {
        return log_choose(n, k) + k * log_p0 + (n - k) * log_q0;
    };

    const double log_obs = log_pmf(successes) + std::log1p(kTieSlack);
    double total = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        const double lp = log_pmf(k);
        if (lp <= log_obs)
            total += std::exp(lp);
    }
    return std::min(total, 1.0);
}

HolmResult holm_bonferroni(const std::vector<double>& pvalues, double alpha) {
    const std::size_t m = pvalues.size();
    HolmResult out;
    out.rejected.assign(m, false);
    out.thresholds.assign(m, 0.0);
    if (m == 0)
        return out;

    for (double p : pvalues)
        if (!(p >= 0.0) || p > 1.0 + 1e-12)
            throw std::invalid_argument("holm: p-value outside [0,1]");

    // Stable order: ties broken by original position.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return pvalues[l] < pvalues[r]; });

    bool stopped = false;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const std::size_t idx = order[rank];
        const double threshold = alpha / static_cast<double>(m - rank);
        out.thresholds[idx] = threshold;
        if (!stopped && pvalues[idx] <= threshold) {
            out.rejected[idx] = true;
            ++out.num_rejected;
        } else {
            stopped = true;
        }
    }
    return out;
}

namespace {

std::vector<double> mid_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return xs[l] < xs[r]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]])
            ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin)
        d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            break;
    }
    return h;
}

double betai(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double lbeta =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log1p(-x);
    const double front = std::exp(lbeta);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

} // namespace

double student_t_two_sided(double t, int df) {
    if (df < 1)
        throw std::invalid_argument("student_t_two_sided: df must be positive");
    if (std::isinf(t))
        return 0.0;
    const double d = static_cast<double>(df);
    return betai(d / 2.0, 0.5, d / (d + t * t));
}

SpearmanResult spearman_rank(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("spearman: length mismatch");
    const std::size_t n = xs.size();
    if (n < 3)
        throw std::invalid_argument("spearman: need at least 3 pairs");

    SpearmanResult out;
    const std::vector<double> rx = mid_ranks(xs);
    const std::vector<double> ry = mid_ranks(ys);

    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        out.defined = false;
        return out;
    }
    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);
    out.r = r;
    out.defined = true;

    if (std::abs(r) >= 1.0) {
        out.p = 0.0;
        return out;
    }
    const double df = static_cast<double>(n - 2);
    const double t = r * std::sqrt(df / (1.0 - r * r));
    out.p = student_t_two_sided(t, static_cast<int>(n) - 2);
    return out;
}

} // namespace qprop
