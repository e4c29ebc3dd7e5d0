#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qprop/assertions.hpp"
#include "qprop/circuit.hpp"

namespace qprop {

/// One measurement demanded by an assertion: a circuit (by digest), one
/// qubit or a joint group, and a basis.
struct MeasurementRequirement {
    std::size_t assertion_index = 0;
    Digest digest;
    std::vector<int> qubits; // ascending; singleton unless joint
    Basis basis = Basis::Z;
    bool joint = false;
};

/// Where a requirement landed: which deduplicated circuit and which packed
/// copy of it.
struct RequirementPlacement {
    std::size_t entry = 0;
    std::size_t copy = 0;
};

/// A copy of one circuit with a conflict-free set of (qubit, basis)
/// measurements attached.
struct PlannedCopy {
    std::map<int, Basis> measurements;
};

struct PlanEntry {
    const Circuit* circuit = nullptr; // borrowed from the assertion list
    Digest digest;
    std::vector<PlannedCopy> copies;
};

/// The execution plan the optimizer produces: deduplicated circuits, packed
/// measurement copies, and the placement of every requirement.
///
/// Invariants (property-tested): within a copy each qubit carries one basis;
/// every requirement is placed exactly once into a compatible copy; no two
/// copies of the same circuit have identical measurement sets.
struct MeasurementPlan {
    std::vector<PlanEntry> entries;
    std::vector<MeasurementRequirement> requirements;
    std::vector<RequirementPlacement> placements;

    std::size_t total_copies() const;
};

/// Instrumentation for the measurement economy checks: what was executed
/// versus what executing every assertion independently would have cost.
struct ExecutionStats {
    std::size_t distinct_circuits = 0;
    std::size_t copies_executed = 0;
    std::size_t shots_sampled = 0;
    std::size_t baseline_copies = 0;
    std::size_t baseline_shots = 0;
};

/// Extracts every requirement from the assertions in their canonical order.
std::vector<MeasurementRequirement> collect_requirements(const std::vector<Assertion>& assertions);

/// Dedup by canonical digest, then greedy first-fit packing: a requirement
/// joins the first copy where its qubits are unused or already measured in
/// the same basis (sharing the physical measurement); otherwise it opens a
/// new copy. A final pass merges any copies that ended up identical. The
/// plan borrows circuits from `assertions`, which must outlive it.
MeasurementPlan build_measurement_plan(const std::vector<Assertion>& assertions);

/// Executes every planned copy (seeded per copy, parallelizable) and turns
/// counts into verdicts: Fisher/binomial p-values join one suite-wide
/// Holm-Bonferroni family at family_alpha, then each assertion's rule is
/// applied against the rejection set.
std::vector<AssertionVerdict> execute_and_evaluate(const MeasurementPlan& plan,
                                                   const std::vector<Assertion>& assertions,
                                                   int shots, double family_alpha,
                                                   std::uint64_t seed, int jobs,
                                                   ExecutionStats* stats_out = nullptr);

} // namespace qprop
