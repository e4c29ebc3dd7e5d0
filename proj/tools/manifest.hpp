#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprop/mutation.hpp"
#include "qprop/property.hpp"

namespace qprop::cli {

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Manifest for `run` and `reproduce`: which fixture (or external circuit)
/// to test, which properties, and the test configuration. Unknown keys are
/// rejected so typos fail loudly.
struct RunManifest {
    std::string algorithm;
    std::optional<std::string> circuit_qasm; // replaces the fixture's base circuit
    std::optional<int> num_properties;       // prefix of the fixture's ordered list
    std::vector<std::string> properties;     // or an explicit selection by name
    TestConfig config;
    std::optional<std::string> results_json;
};

/// Manifest for `sweep`.
struct SweepManifest {
    std::vector<std::string> algorithms;
    int faulty_mutants = 10;
    int equivalent_mutants = 10;
    std::optional<std::uint64_t> mutant_seed; // fixture defaults when absent
    SweepConfig config;
    std::string results_csv;
    std::string summary_csv;
};

RunManifest parse_run_manifest(const std::string& path);
SweepManifest parse_sweep_manifest(const std::string& path);

/// QPROP_SEED override hook: returns the parsed value when the variable is
/// set, rejecting malformed content.
std::optional<std::uint64_t> seed_override_from_env();

} // namespace qprop::cli
