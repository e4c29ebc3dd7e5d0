#include "manifest.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"

namespace qprop::cli {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ManifestError("cannot open manifest '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ManifestError("manifest '" + path + "': " + e.what());
    }
    if (!doc.is_object())
        throw ManifestError("manifest '" + path + "': top level must be an object");
    return doc;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ManifestError("manifest '" + path + "': unknown key '" + key + "'");
    }
}

template <typename T>
T require(const json& doc, const std::string& key, const std::string& path) {
    if (!doc.contains(key))
        throw ManifestError("manifest '" + path + "': missing required key '" + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ManifestError("manifest '" + path + "': key '" + key + "' has the wrong type");
    }
}

template <typename T>
T optional_or(const json& doc, const std::string& key, const std::string& path, T fallback) {
    if (!doc.contains(key))
        return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ManifestError("manifest '" + path + "': key '" + key + "' has the wrong type");
    }
}

} // namespace

RunManifest parse_run_manifest(const std::string& path) {
    const json doc = load_json(path);
    reject_unknown_keys(doc,
                        {"algorithm", "circuit_qasm", "num_properties", "properties",
                         "num_inputs", "shots", "family_alpha", "max_precondition_attempts",
                         "base_seed", "results_json"},
                        path);

    RunManifest m;
    m.algorithm = require<std::string>(doc, "algorithm", path);
    if (doc.contains("circuit_qasm"))
        m.circuit_qasm = require<std::string>(doc, "circuit_qasm", path);
    if (doc.contains("num_properties"))
        m.num_properties = require<int>(doc, "num_properties", path);
    if (doc.contains("properties"))
        m.properties = require<std::vector<std::string>>(doc, "properties", path);
    if (m.num_properties && !m.properties.empty())
        throw ManifestError("manifest '" + path +
                            "': num_properties and properties are mutually exclusive");

    m.config.num_inputs = require<int>(doc, "num_inputs", path);
    m.config.shots = require<int>(doc, "shots", path);
    m.config.family_alpha = optional_or<double>(doc, "family_alpha", path, 0.05);
    m.config.max_precondition_attempts =
        optional_or<int>(doc, "max_precondition_attempts", path, 100);
    m.config.base_seed = require<std::uint64_t>(doc, "base_seed", path);
    if (doc.contains("results_json"))
        m.results_json = require<std::string>(doc, "results_json", path);

    if (m.config.num_inputs < 1)
        throw ManifestError("manifest '" + path + "': num_inputs must be >= 1");
    if (m.config.shots < 1)
        throw ManifestError("manifest '" + path + "': shots must be >= 1");
    if (!(m.config.family_alpha > 0.0 && m.config.family_alpha < 1.0))
        throw ManifestError("manifest '" + path + "': family_alpha must lie in (0,1)");
    if (m.config.max_precondition_attempts < 1)
        throw ManifestError("manifest '" + path + "': max_precondition_attempts must be >= 1");
    return m;
}

SweepManifest parse_sweep_manifest(const std::string& path) {
    const json doc = load_json(path);
    reject_unknown_keys(doc,
                        {"algorithms", "faulty_mutants", "equivalent_mutants", "mutant_seed",
                         "properties_counts", "input_counts", "shot_counts", "repetitions",
                         "family_alpha", "max_precondition_attempts", "base_seed",
                         "results_csv", "summary_csv"},
                        path);

    SweepManifest m;
    m.algorithms = require<std::vector<std::string>>(doc, "algorithms", path);
    if (m.algorithms.empty())
        throw ManifestError("manifest '" + path + "': algorithms must be non-empty");
    m.faulty_mutants = optional_or<int>(doc, "faulty_mutants", path, 10);
    m.equivalent_mutants = optional_or<int>(doc, "equivalent_mutants", path, 10);
    if (m.faulty_mutants < 0 || m.equivalent_mutants < 0)
        throw ManifestError("manifest '" + path + "': mutant counts must be non-negative");
    if (m.faulty_mutants + m.equivalent_mutants == 0)
        throw ManifestError("manifest '" + path + "': at least one mutant required");
    if (doc.contains("mutant_seed"))
        m.mutant_seed = require<std::uint64_t>(doc, "mutant_seed", path);

    m.config.properties_counts = require<std::vector<int>>(doc, "properties_counts", path);
    m.config.input_counts = require<std::vector<int>>(doc, "input_counts", path);
    m.config.shot_counts = require<std::vector<int>>(doc, "shot_counts", path);
    m.config.repetitions = optional_or<int>(doc, "repetitions", path, 1);
    m.config.family_alpha = optional_or<double>(doc, "family_alpha", path, 0.05);
    m.config.max_precondition_attempts =
        optional_or<int>(doc, "max_precondition_attempts", path, 100);
    m.config.base_seed = require<std::uint64_t>(doc, "base_seed", path);
    validate_sweep_config(m.config);

    m.results_csv = require<std::string>(doc, "results_csv", path);
    m.summary_csv = require<std::string>(doc, "summary_csv", path);
    return m;
}

std::optional<std::uint64_t> seed_override_from_env() {
    const char* raw = std::getenv("QPROP_SEED");
    if (!raw || !*raw)
        return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw ManifestError("QPROP_SEED must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

} // namespace qprop::cli
