#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "manifest.hpp"
#include "qprop/corpus.hpp"
#include "qprop/mutation.hpp"
#include "qprop/property.hpp"
#include "qprop/qasm.hpp"
#include "qprop/rng.hpp"

namespace {

using namespace qprop;
using qprop::cli::ManifestError;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

Circuit circuit_under_test(const cli::RunManifest& manifest, const AlgorithmFixture& fixture) {
    if (!manifest.circuit_qasm)
        return fixture.base;
    std::ifstream in(*manifest.circuit_qasm);
    if (!in)
        throw ManifestError("cannot open circuit '" + *manifest.circuit_qasm + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_qasm(text);
}

std::vector<Property> select_properties(const cli::RunManifest& manifest,
                                        const AlgorithmFixture& fixture, const Circuit& cut) {
    std::vector<Property> props = fixture.properties(cut);
    if (manifest.num_properties) {
        if (*manifest.num_properties < 1 ||
            static_cast<std::size_t>(*manifest.num_properties) > props.size())
            throw ManifestError("num_properties out of range for fixture '" + fixture.name +
                                "'");
        props.resize(static_cast<std::size_t>(*manifest.num_properties));
        return props;
    }
    if (manifest.properties.empty())
        return props;
    std::vector<Property> selected;
    for (const std::string& name : manifest.properties) {
        bool found = false;
        for (const Property& p : props) {
            if (p.name == name) {
                selected.push_back(p);
                found = true;
                break;
            }
        }
        if (!found)
            throw ManifestError("fixture '" + fixture.name + "' has no property named '" +
                                name + "'");
    }
    return selected;
}

nlohmann::json verdict_to_json(const AssertionVerdict& v) {
    nlohmann::json tests = nlohmann::json::array();
    for (const auto& t : v.tests) {
        tests.push_back({{"label", t.label},
                         {"p", t.p},
                         {"threshold", t.threshold},
                         {"rejected", t.rejected}});
    }
    return {{"property", v.id.property},
            {"input_ordinal", v.id.input_ordinal},
            {"assertion_ordinal", v.id.assertion_ordinal},
            {"kind", assertion_kind_name(v.kind)},
            {"passed", v.passed},
            {"input_seed", v.input_seed},
            {"failure_detail", v.failure_detail},
            {"tests", tests}};
}

void write_results_json(const std::string& path, const cli::RunManifest& manifest,
                        const SuiteResult& result) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : result.properties) {
        nlohmann::json verdicts = nlohmann::json::array();
        for (const auto& v : p.verdicts)
            verdicts.push_back(verdict_to_json(v));
        props.push_back({{"name", p.name},
                         {"status", property_status_name(p.status)},
                         {"message", p.message},
                         {"case_seeds", p.case_seeds},
                         {"verdicts", verdicts}});
    }
    nlohmann::json doc = {
        {"algorithm", manifest.algorithm},
        {"all_passed", result.all_passed()},
        {"config",
         {{"num_inputs", manifest.config.num_inputs},
          {"shots", manifest.config.shots},
          {"family_alpha", manifest.config.family_alpha},
          {"max_precondition_attempts", manifest.config.max_precondition_attempts},
          {"base_seed", manifest.config.base_seed}}},
        {"stats",
         {{"distinct_circuits", result.stats.distinct_circuits},
          {"copies_executed", result.stats.copies_executed},
          {"shots_sampled", result.stats.shots_sampled},
          {"baseline_copies", result.stats.baseline_copies},
          {"baseline_shots", result.stats.baseline_shots}}},
        {"wall_seconds", result.wall_seconds},
        {"properties", props}};
    std::ofstream out(path);
    if (!out)
        throw ManifestError("cannot write results to '" + path + "'");
    out << doc.dump(2) << '\n';
}

void print_suite_report(const SuiteResult& result) {
    for (const auto& p : result.properties) {
        std::cout << p.name << ": " << property_status_name(p.status) << '\n';
        if (!p.message.empty())
            std::cout << "  " << p.message << '\n';
        for (const auto& v : p.verdicts) {
            if (v.passed)
                continue;
            std::cout << "  input " << v.id.input_ordinal << " assertion "
                      << v.id.assertion_ordinal << " (" << assertion_kind_name(v.kind)
                      << ") failed: " << v.failure_detail << '\n';
            std::cout << "    replay seed: " << v.input_seed << '\n';
        }
    }
    std::cout << "suite: " << (result.all_passed() ? "pass" : "FAIL") << "  ("
              << result.stats.copies_executed << " circuit copies, "
              << result.stats.shots_sampled << " shots)\n";
}

int cmd_run(const std::string& manifest_path, int jobs) {
    cli::RunManifest manifest = cli::parse_run_manifest(manifest_path);
    if (const auto env_seed = cli::seed_override_from_env())
        manifest.config.base_seed = *env_seed;
    manifest.config.jobs = jobs;

    const AlgorithmFixture& fixture = fixture_by_name(manifest.algorithm);
    const Circuit cut = circuit_under_test(manifest, fixture);
    const std::vector<Property> props = select_properties(manifest, fixture, cut);
    if (props.empty())
        throw ManifestError("no properties selected");

    const SuiteResult result = run_suite(props, manifest.config);
    print_suite_report(result);
    if (manifest.results_json)
        write_results_json(*manifest.results_json, manifest, result);
    return result.all_passed() ? kExitPass : kExitFailure;
}

int cmd_reproduce(const std::string& manifest_path, const std::string& property_name,
                  std::uint64_t seed, int jobs) {
    cli::RunManifest manifest = cli::parse_run_manifest(manifest_path);
    if (const auto env_seed = cli::seed_override_from_env())
        manifest.config.base_seed = *env_seed;
    manifest.config.jobs = jobs;

    const AlgorithmFixture& fixture = fixture_by_name(manifest.algorithm);
    const Circuit cut = circuit_under_test(manifest, fixture);
    const std::vector<Property> props = fixture.properties(cut);
    const Property* chosen = nullptr;
    for (const Property& p : props)
        if (p.name == property_name)
            chosen = &p;
    if (!chosen)
        throw ManifestError("fixture '" + fixture.name + "' has no property named '" +
                            property_name + "'");

    const std::vector<AssertionVerdict> verdicts = reproduce(*chosen, seed, manifest.config);
    bool all = true;
    for (const auto& v : verdicts) {
        std::cout << "assertion " << v.id.assertion_ordinal << " ("
                  << assertion_kind_name(v.kind) << "): " << (v.passed ? "pass" : "FAIL");
        if (!v.passed)
            std::cout << " - " << v.failure_detail;
        std::cout << '\n';
        all = all && v.passed;
    }
    return all ? kExitPass : kExitFailure;
}

int cmd_mutate(const std::string& qasm_path, const std::string& kind, int count,
               std::uint64_t seed, const std::string& out_dir) {
    std::ifstream in(qasm_path);
    if (!in)
        throw ManifestError("cannot open circuit '" + qasm_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const Circuit base = from_qasm(text);

    std::vector<MutantRecord> mutants;
    if (kind == "faulty")
        mutants = generate_faulty_mutants(base, count, seed);
    else if (kind == "equivalent")
        mutants = generate_equivalent_mutants(base, count, seed);
    else
        throw ManifestError("mutant kind must be 'faulty' or 'equivalent'");

    std::filesystem::create_directories(out_dir);
    std::ofstream index(out_dir + "/index.csv");
    if (!index)
        throw ManifestError("cannot write mutant index in '" + out_dir + "'");
    index << "id,kind,base_digest,operator,seed,file\n";
    for (const auto& m : mutants) {
        const std::string file = "mutant_" + m.id + ".qasm";
        std::ofstream out(out_dir + "/" + file);
        out << to_qasm(m.circuit);
        index << m.id << ',' << mutant_kind_name(m.kind) << ',' << to_string(m.base_digest)
              << ",\"" << m.operator_desc << "\"," << m.seed << ',' << file << '\n';
    }
    std::cout << "wrote " << mutants.size() << " mutants to " << out_dir << '\n';
    return kExitPass;
}

int cmd_sweep(const std::string& manifest_path, int jobs) {
    cli::SweepManifest manifest = cli::parse_sweep_manifest(manifest_path);
    if (const auto env_seed = cli::seed_override_from_env())
        manifest.config.base_seed = *env_seed;
    manifest.config.jobs = jobs;

    std::vector<SweepAlgorithm> algos;
    for (const std::string& name : manifest.algorithms) {
        const AlgorithmFixture& fixture = fixture_by_name(name);
        SweepAlgorithm algo;
        algo.name = fixture.name;
        algo.properties = fixture.properties;
        const std::uint64_t faulty_seed =
            manifest.mutant_seed
                ? derive_seed(*manifest.mutant_seed, {hash_string(name), 1})
                : fixture.default_faulty_seed;
        const std::uint64_t equivalent_seed =
            manifest.mutant_seed
                ? derive_seed(*manifest.mutant_seed, {hash_string(name), 2})
                : fixture.default_equivalent_seed;
        auto faulty = generate_faulty_mutants(fixture.base, manifest.faulty_mutants,
                                              faulty_seed, name + "-");
        auto equivalent = generate_equivalent_mutants(
            fixture.base, manifest.equivalent_mutants, equivalent_seed, name + "-");
        algo.mutants = std::move(faulty);
        algo.mutants.insert(algo.mutants.end(), std::make_move_iterator(equivalent.begin()),
                            std::make_move_iterator(equivalent.end()));
        algos.push_back(std::move(algo));
    }

    const SweepResult result = run_sweep(algos, manifest.config);

    std::ofstream rows_out(manifest.results_csv);
    if (!rows_out)
        throw ManifestError("cannot write '" + manifest.results_csv + "'");
    write_rows_csv(rows_out, result.rows);
    std::ofstream summary_out(manifest.summary_csv);
    if (!summary_out)
        throw ManifestError("cannot write '" + manifest.summary_csv + "'");
    write_summary_csv(summary_out, result.summary);

    std::cout << result.rows.size() << " rows -> " << manifest.results_csv << '\n';
    for (const auto& s : result.summary) {
        std::cout << s.variable << " (" << mutant_kind_name(s.mutant_kind) << "): r=";
        if (s.defined)
            std::cout << s.spearman_r << " p=" << s.p_value;
        else
            std::cout << "undefined";
        std::cout << " n=" << s.n << '\n';
    }
    return kExitPass;
}

int cmd_export_corpus(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& fixture : corpus()) {
        std::ofstream out(out_dir + "/" + fixture.name + ".qasm");
        if (!out)
            throw ManifestError("cannot write into '" + out_dir + "'");
        out << to_qasm(fixture.base);
    }
    std::cout << "exported " << corpus().size() << " circuits to " << out_dir << '\n';
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"property-based testing toolkit for quantum circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads (results are independent of this)")
        ->check(CLI::PositiveNumber);

    std::string manifest_path, property_name, qasm_path, out_dir;
    std::string mutant_kind = "faulty";
    int mutant_count = 10;
    std::uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a property suite from a manifest");
    run->add_option("manifest", manifest_path)->required();

    CLI::App* repro =
        app.add_subcommand("reproduce", "re-evaluate one property at a recorded seed");
    repro->add_option("manifest", manifest_path)->required();
    repro->add_option("--property", property_name)->required();
    repro->add_option("--seed", seed)->required();

    CLI::App* mutate = app.add_subcommand("mutate", "generate mutants of a QASM circuit");
    mutate->add_option("input", qasm_path)->required();
    mutate->add_option("--kind", mutant_kind)->check(CLI::IsMember({"faulty", "equivalent"}));
    mutate->add_option("--count", mutant_count)->check(CLI::PositiveNumber);
    mutate->add_option("--seed", seed);
    mutate->add_option("--out", out_dir)->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run the mutation-analysis grid");
    sweep->add_option("manifest", manifest_path)->required();

    CLI::App* export_cmd = app.add_subcommand("export-corpus", "write fixture circuits as QASM");
    export_cmd->add_option("--out", out_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(manifest_path, jobs);
        if (repro->parsed())
            return cmd_reproduce(manifest_path, property_name, seed, jobs);
        if (mutate->parsed())
            return cmd_mutate(qasm_path, mutant_kind, mutant_count, seed, out_dir);
        if (sweep->parsed())
            return cmd_sweep(manifest_path, jobs);
        if (export_cmd->parsed())
            return cmd_export_corpus(out_dir);
    } catch (const ManifestError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const QasmParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
