#pragma once

#include <cstdint>
#include <vector>

namespace qprop {

/// 2x2 contingency table of non-negative counts. Rows are the two circuits
/// being compared, columns the 0/1 outcome tallies of one qubit in one basis.
struct ContingencyTable {
    std::int64_t a = 0; // row 0, outcome 0
    std::int64_t b = 0; // row 0, outcome 1
    std::int64_t c = 0; // row 1, outcome 0
    std::int64_t d = 0; // row 1, outcome 1
};

/// Two-sided Fisher's exact test: the sum of hypergeometric probabilities
/// (margins fixed) of every table at most as probable as the observed one.
/// Computed in log space; exact for totals up to 20,000. A relative slack of
/// 1e-7 on the point-probability comparison keeps the observed table itself
/// from being excluded by rounding.
double fisher_exact_two_sided(const ContingencyTable& t);

/// Exact two-sided binomial test of `successes` out of `n` draws against
/// success probability p0, with the same minlike two-sided rule as the
/// Fisher test.
double binomial_two_sided(std::int64_t successes, std::int64_t n, double p0);

/// Holm-Bonferroni step-down over a family of p-values: sort ascending,
/// reject while p_(k) <= alpha/(m-k+1), stop at the first failure.
/// `rejected` and `thresholds` align with the input order; thresholds report
/// the level each test faced given its rank.
struct HolmResult {
    std::vector<bool> rejected;
    std::vector<double> thresholds;
    std::size_t num_rejected = 0;
};

HolmResult holm_bonferroni(const std::vector<double>& pvalues, double alpha);

/// Spearman rank correlation with mid-ranks for ties; p-value from the
/// t-distribution approximation with n-2 degrees of freedom. `defined` is
/// false when either input is constant.
struct SpearmanResult {
    double r = 0.0;
    double p = 1.0;
    bool defined = false;
};

SpearmanResult spearman_rank(const std::vector<double>& xs, const std::vector<double>& ys);

/// Two-sided tail probability of the Student t distribution.
double student_t_two_sided(double t, int df);

/// log(n!), backed by a process-wide table.
double log_factorial(std::int64_t n);

} // namespace qprop
