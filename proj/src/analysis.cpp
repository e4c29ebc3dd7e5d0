#include "qprop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qprop/parallel.hpp"
#include "qprop/rng.hpp"
#include "qprop/simulator.hpp"
#include "qprop/stats.hpp"

namespace qprop {

std::size_t MeasurementPlan::total_copies() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        n += e.copies.size();
    return n;
}

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

std::vector<MeasurementRequirement> collect_requirements(const std::vector<Assertion>& assertions) {
    std::vector<MeasurementRequirement> reqs;
    for (std::size_t idx = 0; idx < assertions.size(); ++idx) {
        const Assertion& a = assertions[idx];
        switch (a.kind) {
            case AssertionKind::Equal:
            case AssertionKind::Different: {
                const Digest da = canonical_hash(a.circuit_a);
                const Digest db = canonical_hash(*a.circuit_b);
                for (Basis basis : a.bases) {
                    for (std::size_t k = 0; k < a.qubits_a.size(); ++k) {
                        reqs.push_back({idx, da, {a.qubits_a[k]}, basis, false});
                        reqs.push_back({idx, db, {a.qubits_b[k]}, basis, false});
                    }
                }
                break;
            }
            case AssertionKind::Probability: {
                const Digest d = canonical_hash(a.circuit_a);
                for (int q : a.qubits_a)
                    reqs.push_back({idx, d, {q}, a.joint_basis, false});
                break;
            }
            case AssertionKind::Entangled:
            case AssertionKind::Separable:
            case AssertionKind::MostFrequent: {
                const Digest d = canonical_hash(a.circuit_a);
                reqs.push_back({idx, d, sorted_copy(a.qubits_a), a.joint_basis, true});
                break;
            }
        }
    }
    return reqs;
}

namespace {

bool copy_accepts(const PlannedCopy& copy, const MeasurementRequirement& req) {
    for (int q : req.qubits) {
        const auto it = copy.measurements.find(q);
        if (it != copy.measurements.end() && it->second != req.basis)
            return false;
    }
    return true;
}

void place_into(PlannedCopy& copy, const MeasurementRequirement& req) {
    for (int q : req.qubits)
        copy.measurements.emplace(q, req.basis);
}

} // namespace

MeasurementPlan build_measurement_plan(const std::vector<Assertion>& assertions) {
    MeasurementPlan plan;
    plan.requirements = collect_requirements(assertions);

    // Deduplicate circuits by digest; first occurrence is the representative.
    std::map<Digest, std::size_t> entry_of;
    for (const MeasurementRequirement& req : plan.requirements) {
        if (entry_of.count(req.digest))
            continue;
        const Assertion& a = assertions[req.assertion_index];
        const Circuit* rep = nullptr;
        if (canonical_hash(a.circuit_a) == req.digest)
            rep = &a.circuit_a;
        else
            rep = &*a.circuit_b;
        entry_of.emplace(req.digest, plan.entries.size());
        plan.entries.push_back(PlanEntry{rep, req.digest, {}});
    }

    // Greedy first-fit packing in canonical requirement order.
    plan.placements.resize(plan.requirements.size());
    for (std::size_t r = 0; r < plan.requirements.size(); ++r) {
        const MeasurementRequirement& req = plan.requirements[r];
        PlanEntry& entry = plan.entries[entry_of.at(req.digest)];
        std::size_t chosen = entry.copies.size();
        for (std::size_t c = 0; c < entry.copies.size(); ++c) {
            if (copy_accepts(entry.copies[c], req)) {
                chosen = c;
                break;
            }
        }
        if (chosen == entry.copies.size())
            entry.copies.emplace_back();
        place_into(entry.copies[chosen], req);
        plan.placements[r] = {entry_of.at(req.digest), chosen};
    }

    // Final pass: merge copies that ended up with identical measurement sets.
    for (std::size_t e = 0; e < plan.entries.size(); ++e) {
        PlanEntry& entry = plan.entries[e];
        std::vector<std::size_t> remap(entry.copies.size());
        std::vector<PlannedCopy> kept;
        for (std::size_t c = 0; c < entry.copies.size(); ++c) {
            std::size_t found = kept.size();
            for (std::size_t k = 0; k < kept.size(); ++k) {
                if (kept[k].measurements == entry.copies[c].measurements) {
                    found = k;
                    break;
                }
            }
            if (found == kept.size())
                kept.push_back(entry.copies[c]);
            remap[c] = found;
        }
        if (kept.size() != entry.copies.size()) {
            entry.copies = std::move(kept);
            for (std::size_t r = 0; r < plan.placements.size(); ++r)
                if (plan.placements[r].entry == e)
                    plan.placements[r].copy = remap[plan.placements[r].copy];
        }
    }
    return plan;
}

namespace {

// Per-assertion cost had each assertion been executed on its own:
// Equal/Different need one copy per (circuit, basis); Probability and the
// joint kinds need a single copy.
std::size_t unoptimized_copy_count(const std::vector<Assertion>& assertions) {
    std::size_t copies = 0;
    for (const Assertion& a : assertions) {
        switch (a.kind) {
            case AssertionKind::Equal:
            case AssertionKind::Different:
                copies += 2 * a.bases.size();
                break;
            default:
                copies += 1;
                break;
        }
    }
    return copies;
}

struct CopyResult {
    Counts counts;
    std::vector<int> measured; // ascending qubits of the copy
};

std::string describe_pair(const Assertion& a, std::size_t k, Basis basis) {
    std::ostringstream os;
    os << "q" << a.qubits_a[k] << "/q" << a.qubits_b[k] << " basis " << basis_name(basis);
    return os.str();
}

// Position of qubit q among the copy's measured qubits.
std::size_t key_position(const std::vector<int>& measured, int q) {
    const auto it = std::lower_bound(measured.begin(), measured.end(), q);
    return static_cast<std::size_t>(it - measured.begin());
}

std::uint64_t zeros_of(const CopyResult& res, int qubit) {
    const std::size_t pos = key_position(res.measured, qubit);
    std::uint64_t zeros = 0;
    for (const auto& [key, n] : res.counts.counts)
        if (key[pos] == '0')
            zeros += n;
    return zeros;
}

std::map<std::string, std::uint64_t> project_group(const CopyResult& res,
                                                   const std::vector<int>& qubits) {
    std::vector<std::size_t> positions;
    positions.reserve(qubits.size());
    for (int q : qubits)
        positions.push_back(key_position(res.measured, q));
    std::map<std::string, std::uint64_t> out;
    for (const auto& [key, n] : res.counts.counts) {
        std::string sub(qubits.size(), '0');
        for (std::size_t i = 0; i < positions.size(); ++i)
            sub[i] = key[positions[i]];
        out[sub] += n;
    }
    return out;
}

bool complementary(const std::string& a, const std::string& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i])
            return false;
    return true;
}

std::string outcomes_summary(const std::map<std::string, std::uint64_t>& grouped) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, n] : grouped) {
        if (!first)
            os << ", ";
        os << key << ":" << n;
        first = false;
    }
    return os.str();
}

} // namespace

std::vector<AssertionVerdict> execute_and_evaluate(const MeasurementPlan& plan,
                                                   const std::vector<Assertion>& assertions,
                                                   int shots, double family_alpha,
                                                   std::uint64_t seed, int jobs,
                                                   ExecutionStats* stats_out) {
    if (shots < 1)
        throw std::invalid_argument("execute_and_evaluate: shots must be positive");
    if (!(family_alpha > 0.0 && family_alpha < 1.0))
        throw std::invalid_argument("execute_and_evaluate: family alpha outside (0,1)");

    // Flatten copies for parallel execution; results are index-addressed so
    // the outcome is independent of scheduling.
    struct Job {
        std::size_t entry;
        std::size_t copy;
    };
    std::vector<Job> jobs_list;
    for (std::size_t e = 0; e < plan.entries.size(); ++e)
        for (std::size_t c = 0; c < plan.entries[e].copies.size(); ++c)
            jobs_list.push_back({e, c});

    std::vector<std::vector<CopyResult>> results(plan.entries.size());
    for (std::size_t e = 0; e < plan.entries.size(); ++e)
        results[e].resize(plan.entries[e].copies.size());

    parallel_for(jobs_list.size(), jobs, [&](std::size_t j) {
        const auto [e, c] = jobs_list[j];
        const PlanEntry& entry = plan.entries[e];
        const PlannedCopy& copy = entry.copies[c];
        Circuit measured = *entry.circuit;
        int cbit = 0;
        std::vector<int> qubits;
        for (const auto& [q, basis] : copy.measurements) {
            measured = measured.with_basis_change(q, basis);
            measured = measured.with_measure(q, Basis::Z, cbit++);
            qubits.push_back(q);
        }
        const std::uint64_t copy_seed =
            derive_seed(seed, {entry.digest.hi, entry.digest.lo, static_cast<std::uint64_t>(c)});
        results[e][c] = CopyResult{sample_counts(measured, shots, copy_seed), std::move(qubits)};
    });

    if (stats_out) {
        stats_out->distinct_circuits = plan.entries.size();
        stats_out->copies_executed = jobs_list.size();
        stats_out->shots_sampled = jobs_list.size() * static_cast<std::size_t>(shots);
        stats_out->baseline_copies = unoptimized_copy_count(assertions);
        stats_out->baseline_shots = stats_out->baseline_copies * static_cast<std::size_t>(shots);
    }

    const auto result_for = [&](std::size_t req_index) -> const CopyResult& {
        const RequirementPlacement& pl = plan.placements[req_index];
        return results[pl.entry][pl.copy];
    };

    // First pass: build the suite-wide p-value family in canonical order.
    struct PendingTest {
        std::size_t assertion_index;
        std::string label;
        double p;
        std::string detail; // observed marginals, for failure reporting
    };
    std::vector<PendingTest> family;

    std::size_t req_cursor = 0;
    const std::uint64_t total = static_cast<std::uint64_t>(shots);
    for (std::size_t idx = 0; idx < assertions.size(); ++idx) {
        const Assertion& a = assertions[idx];
        switch (a.kind) {
            case AssertionKind::Equal:
            case AssertionKind::Different: {
                for (Basis basis : a.bases) {
                    for (std::size_t k = 0; k < a.qubits_a.size(); ++k) {
                        const std::uint64_t za = zeros_of(result_for(req_cursor), a.qubits_a[k]);
                        const std::uint64_t zb =
                            zeros_of(result_for(req_cursor + 1), a.qubits_b[k]);
                        req_cursor += 2;
                        ContingencyTable table{
                            static_cast<std::int64_t>(za),
                            static_cast<std::int64_t>(total - za),
                            static_cast<std::int64_t>(zb),
                            static_cast<std::int64_t>(total - zb)};
                        std::ostringstream detail;
                        detail << "P0=" << static_cast<double>(za) / total
                               << " vs P0=" << static_cast<double>(zb) / total;
                        family.push_back(PendingTest{idx, describe_pair(a, k, basis),
                                                     fisher_exact_two_sided(table),
                                                     detail.str()});
                    }
                }
                break;
            }
            case AssertionKind::Probability: {
                for (std::size_t k = 0; k < a.qubits_a.size(); ++k) {
                    const std::uint64_t z = zeros_of(result_for(req_cursor), a.qubits_a[k]);
                    ++req_cursor;
                    std::ostringstream label;
                    label << "q" << a.qubits_a[k] << " basis " << basis_name(a.joint_basis);
                    std::ostringstream detail;
                    detail << "observed P0=" << static_cast<double>(z) / total << ", target "
                           << a.probs_of_zero[k];
                    family.push_back(PendingTest{
                        idx, label.str(),
                        binomial_two_sided(static_cast<std::int64_t>(z),
                                           static_cast<std::int64_t>(total), a.probs_of_zero[k]),
                        detail.str()});
                }
                break;
            }
            default:
                ++req_cursor; // joint kinds produce no p-values
                break;
        }
    }

    std::vector<double> pvalues;
    pvalues.reserve(family.size());
    for (const auto& t : family)
        pvalues.push_back(t.p);
    const HolmResult holm = holm_bonferroni(pvalues, family_alpha);

    // Second pass: verdicts.
    std::vector<AssertionVerdict> verdicts(assertions.size());
    for (std::size_t idx = 0; idx < assertions.size(); ++idx) {
        verdicts[idx].id = assertions[idx].id;
        verdicts[idx].kind = assertions[idx].kind;
        verdicts[idx].passed = true;
    }

    for (std::size_t t = 0; t < family.size(); ++t) {
        const std::size_t idx = family[t].assertion_index;
        AssertionVerdict& v = verdicts[idx];
        v.tests.push_back(TestOutcome{family[t].label, family[t].p, holm.thresholds[t],
                                      holm.rejected[t]});
        const AssertionKind kind = assertions[idx].kind;
        if (holm.rejected[t] &&
            (kind == AssertionKind::Equal || kind == AssertionKind::Probability) &&
            v.failure_detail.empty()) {
            v.failure_detail = family[t].label + ": " + family[t].detail;
        }
    }

    req_cursor = 0;
    for (std::size_t idx = 0; idx < assertions.size(); ++idx) {
        const Assertion& a = assertions[idx];
        AssertionVerdict& v = verdicts[idx];
        switch (a.kind) {
            case AssertionKind::Equal: {
                req_cursor += 2 * a.bases.size() * a.qubits_a.size();
                for (const auto& t : v.tests)
                    if (t.rejected)
                        v.passed = false;
                break;
            }
            case AssertionKind::Different: {
                req_cursor += 2 * a.bases.size() * a.qubits_a.size();
                bool any = false;
                for (const auto& t : v.tests)
                    any = any || t.rejected;
                if (!any) {
                    v.passed = false;
                    v.failure_detail = "no qubit/basis test distinguished the two states";
                }
                break;
            }
            case AssertionKind::Probability: {
                req_cursor += a.qubits_a.size();
                for (const auto& t : v.tests)
                    if (t.rejected)
                        v.passed = false;
                break;
            }
            case AssertionKind::Entangled:
            case AssertionKind::Separable: {
                const std::vector<int> qs = sorted_copy(a.qubits_a);
                const auto grouped = project_group(result_for(req_cursor), qs);
                ++req_cursor;
                const bool two_complementary =
                    grouped.size() == 2 &&
                    complementary(grouped.begin()->first, std::next(grouped.begin())->first);
                const bool entangled_view = two_complementary;
                const bool pass = (a.kind == AssertionKind::Entangled) ? entangled_view
                                                                       : !entangled_view;
                v.passed = pass;
                if (!pass)
                    v.failure_detail =
                        std::string(a.kind == AssertionKind::Entangled
                                        ? "outcomes are not two complementary strings: "
                                        : "outcomes form a complementary pair: ") +
                        outcomes_summary(grouped);
                break;
            }
            case AssertionKind::MostFrequent: {
                const std::vector<int> qs = sorted_copy(a.qubits_a);
                const auto grouped = project_group(result_for(req_cursor), qs);
                ++req_cursor;
                // Expected string is aligned with the user's qubit order;
                // re-align it with the ascending measurement order.
                std::string expected(qs.size(), '0');
                for (std::size_t i = 0; i < qs.size(); ++i) {
                    const auto it = std::find(a.qubits_a.begin(), a.qubits_a.end(), qs[i]);
                    expected[i] = a.expected_outcome[static_cast<std::size_t>(
                        it - a.qubits_a.begin())];
                }
                std::uint64_t best = 0;
                std::string best_key;
                bool tie = false;
                for (const auto& [key, n] : grouped) {
                    if (n > best) {
                        best = n;
                        best_key = key;
                        tie = false;
                    } else if (n == best) {
                        tie = true;
                    }
                }
                if (tie || best_key != expected) {
                    v.passed = false;
                    std::ostringstream os;
                    if (tie)
                        os << "no unique most-frequent outcome (" << outcomes_summary(grouped)
                           << ")";
                    else
                        os << "most frequent outcome " << best_key << " != expected " << expected
                           << " (" << outcomes_summary(grouped) << ")";
                    v.failure_detail = os.str();
                }
                break;
            }
        }
        if (!v.passed && v.failure_detail.empty())
            v.failure_detail = "assertion failed";
    }

    return verdicts;
}

} // namespace qprop
