#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qprop/analysis.hpp"
#include "qprop/assertions.hpp"
#include "qprop/generators.hpp"

namespace qprop {

/// A testable specification: seeded input generators, a precondition over
/// the generated inputs, and an operations body that builds circuits and
/// registers assertions.
struct Property {
    std::string name;
    std::vector<InputGenerator> generators;
    /// May be empty; an absent precondition accepts every input.
    std::function<bool(const std::vector<GeneratedValue>&)> precondition;
    std::function<void(const std::vector<GeneratedValue>&, AssertionSink&)> operations;
};

struct TestConfig {
    int num_inputs = 16;
    int shots = 1600;
    double family_alpha = 0.05;
    int max_precondition_attempts = 100;
    std::uint64_t base_seed = 0;
    int jobs = 1;
};

/// One accepted input tuple. The seed replays the whole tuple: generator j
/// draws from derive_seed(seed, {j}).
struct GeneratedCase {
    std::uint64_t seed;
    std::vector<GeneratedValue> inputs;
};

struct PreconditionTimeoutError : std::runtime_error {
    PreconditionTimeoutError(const std::string& property, int ordinal, int attempts)
        : std::runtime_error("property '" + property + "': no input satisfying the " +
                             "precondition within " + std::to_string(attempts) +
                             " attempts (input " + std::to_string(ordinal) + ")"),
          ordinal(ordinal) {}
    int ordinal;
};

enum class PropertyStatus { Pass, Fail, ExecutionError, PreconditionTimeout };

const char* property_status_name(PropertyStatus s);

struct PropertyResult {
    std::string name;
    PropertyStatus status = PropertyStatus::Pass;
    std::vector<AssertionVerdict> verdicts; // canonical order
    std::vector<std::uint64_t> case_seeds;  // one per accepted input
    std::string message;                    // timeout/error details
};

struct SuiteResult {
    std::vector<PropertyResult> properties; // input order
    double wall_seconds = 0.0;
    ExecutionStats stats;

    bool all_passed() const;
    const PropertyResult& by_name(const std::string& name) const;
};

/// Draws exactly cfg.num_inputs accepted input tuples for the property.
/// Candidate seeds are derived from (base_seed, generator-signature list,
/// ordinal, attempt), so properties with equal generator signatures and
/// equal base seeds consume equal seed streams, and a precondition rejection
/// advances only the rejecting property's attempts. Throws
/// PreconditionTimeoutError after cfg.max_precondition_attempts rejections
/// for one ordinal.
std::vector<GeneratedCase> generate_inputs(const Property& p, const TestConfig& cfg);

/// Runs every property: generates inputs, executes operations bodies,
/// collects every assertion of the whole batch, and evaluates them together
/// under one suite-wide correction family. No early exit: the workload does
/// not depend on where failures occur. Results (apart from wall_seconds) are
/// a pure function of (properties, cfg).
SuiteResult run_suite(const std::vector<Property>& properties, const TestConfig& cfg);

/// Regenerates the input tuple for a recorded case seed and re-evaluates
/// just that case. Inputs are bit-identical to the original run; measurement
/// noise is freshly sampled and the correction family contains only this
/// case's tests, so borderline verdicts can differ from the batch run.
std::vector<AssertionVerdict> reproduce(const Property& p, std::uint64_t case_seed,
                                        const TestConfig& cfg);

} // namespace qprop
