#include "qprop/property.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "qprop/parallel.hpp"
#include "qprop/rng.hpp"

namespace qprop {

const char* property_status_name(PropertyStatus s) {
    switch (s) {
        case PropertyStatus::Pass:                return "pass";
        case PropertyStatus::Fail:                return "fail";
        case PropertyStatus::ExecutionError:      return "execution_error";
        case PropertyStatus::PreconditionTimeout: return "precondition_timeout";
    }
    return "?";
}

bool SuiteResult::all_passed() const {
    for (const auto& p : properties)
        if (p.status != PropertyStatus::Pass)
            return false;
    return true;
}

const PropertyResult& SuiteResult::by_name(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name)
            return p;
    throw std::out_of_range("SuiteResult: no property named '" + name + "'");
}

namespace {

std::uint64_t signature_hash(const Property& p) {
    std::string joined;
    for (const auto& g : p.generators) {
        joined += g.signature();
        joined += ';';
    }
    return hash_string(joined);
}

std::vector<GeneratedValue> materialize(const Property& p, std::uint64_t case_seed) {
    std::vector<GeneratedValue> inputs;
    inputs.reserve(p.generators.size());
    for (std::size_t j = 0; j < p.generators.size(); ++j)
        inputs.push_back(p.generators[j].generate(
            derive_seed(case_seed, {static_cast<std::uint64_t>(j)})));
    return inputs;
}

} // namespace

std::vector<GeneratedCase> generate_inputs(const Property& p, const TestConfig& cfg) {
    if (cfg.num_inputs < 1)
        throw std::invalid_argument("generate_inputs: num_inputs must be positive");
    if (cfg.max_precondition_attempts < 1)
        throw std::invalid_argument("generate_inputs: attempt budget must be positive");

    const std::uint64_t sig = signature_hash(p);
    std::vector<GeneratedCase> cases;
    cases.reserve(cfg.num_inputs);
    for (int ordinal = 0; ordinal < cfg.num_inputs; ++ordinal) {
        bool accepted = false;
        for (int attempt = 0; attempt < cfg.max_precondition_attempts; ++attempt) {
            const std::uint64_t case_seed =
                derive_seed(cfg.base_seed, {sig, static_cast<std::uint64_t>(ordinal),
                                            static_cast<std::uint64_t>(attempt)});
            std::vector<GeneratedValue> inputs = materialize(p, case_seed);
            if (!p.precondition || p.precondition(inputs)) {
                cases.push_back(GeneratedCase{case_seed, std::move(inputs)});
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw PreconditionTimeoutError(p.name, ordinal, cfg.max_precondition_attempts);
    }
    return cases;
}

SuiteResult run_suite(const std::vector<Property>& properties, const TestConfig& cfg) {
    if (properties.empty())
        throw std::invalid_argument("run_suite: empty property list");
    {
        std::set<std::string> names;
        for (const auto& p : properties)
            if (!names.insert(p.name).second)
                throw std::invalid_argument("run_suite: duplicate property name '" + p.name +
                                            "'");
    }

    const auto started = std::chrono::steady_clock::now();

    SuiteResult result;
    result.properties.resize(properties.size());
    for (std::size_t i = 0; i < properties.size(); ++i)
        result.properties[i].name = properties[i].name;

    // Input generation. Precondition timeouts fail only the owning property.
    std::vector<std::vector<GeneratedCase>> cases(properties.size());
    for (std::size_t i = 0; i < properties.size(); ++i) {
        try {
            cases[i] = generate_inputs(properties[i], cfg);
            for (const auto& c : cases[i])
                result.properties[i].case_seeds.push_back(c.seed);
        } catch (const PreconditionTimeoutError& e) {
            result.properties[i].status = PropertyStatus::PreconditionTimeout;
            result.properties[i].message = e.what();
        }
    }

    // Execute every operations body, each into its own sink; slots are
    // index-addressed so parallel execution stays deterministic.
    struct CaseJob {
        std::size_t property;
        std::size_t ordinal;
    };
    std::vector<CaseJob> jobs;
    for (std::size_t i = 0; i < properties.size(); ++i)
        for (std::size_t k = 0; k < cases[i].size(); ++k)
            jobs.push_back({i, k});

    std::vector<std::vector<Assertion>> collected(jobs.size());
    std::vector<std::string> errors(jobs.size());
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t j) {
        const auto [i, k] = jobs[j];
        AssertionSink sink(properties[i].name, static_cast<int>(k));
        try {
            properties[i].operations(cases[i][k].inputs, sink);
            collected[j] = sink.take();
        } catch (const std::exception& e) {
            errors[j] = e.what();
        } catch (...) {
            errors[j] = "unknown error";
        }
    });

    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < properties.size(); ++i)
        index_of[properties[i].name] = i;

    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (errors[j].empty())
            continue;
        PropertyResult& pr = result.properties[jobs[j].property];
        pr.status = PropertyStatus::ExecutionError;
        if (!pr.message.empty())
            pr.message += "; ";
        pr.message += "input " + std::to_string(jobs[j].ordinal) + ": " + errors[j];
    }

    // Canonical assertion order: property name, then input ordinal, then
    // assertion ordinal. Registration and execution order drop out here.
    std::vector<std::size_t> job_order(jobs.size());
    for (std::size_t j = 0; j < job_order.size(); ++j)
        job_order[j] = j;
    std::sort(job_order.begin(), job_order.end(), [&](std::size_t l, std::size_t r) {
        const auto& pl = properties[jobs[l].property].name;
        const auto& pr = properties[jobs[r].property].name;
        if (pl != pr)
            return pl < pr;
        return jobs[l].ordinal < jobs[r].ordinal;
    });

    std::vector<Assertion> assertions;
    for (std::size_t j : job_order)
        for (Assertion& a : collected[j])
            assertions.push_back(std::move(a));

    const MeasurementPlan plan = build_measurement_plan(assertions);
    const std::uint64_t exec_seed = derive_seed(cfg.base_seed, {hash_string("execution")});
    const std::vector<AssertionVerdict> verdicts = execute_and_evaluate(
        plan, assertions, cfg.shots, cfg.family_alpha, exec_seed, cfg.jobs, &result.stats);

    for (const AssertionVerdict& v : verdicts) {
        PropertyResult& pr = result.properties[index_of.at(v.id.property)];
        AssertionVerdict tagged = v;
        tagged.input_seed = cases[index_of.at(v.id.property)]
                                [static_cast<std::size_t>(v.id.input_ordinal)]
                                    .seed;
        if (!tagged.passed && pr.status == PropertyStatus::Pass)
            pr.status = PropertyStatus::Fail;
        pr.verdicts.push_back(std::move(tagged));
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::vector<AssertionVerdict> reproduce(const Property& p, std::uint64_t case_seed,
                                        const TestConfig& cfg) {
    std::vector<GeneratedValue> inputs = materialize(p, case_seed);
    if (p.precondition && !p.precondition(inputs))
        throw std::invalid_argument(
            "reproduce: seed does not satisfy the property's precondition; it was not "
            "produced by a run of this property");
    AssertionSink sink(p.name, 0);
    p.operations(inputs, sink);
    std::vector<Assertion> assertions = sink.take();
    const MeasurementPlan plan = build_measurement_plan(assertions);
    const std::uint64_t exec_seed = derive_seed(cfg.base_seed, {hash_string("execution")});
    std::vector<AssertionVerdict> verdicts =
        execute_and_evaluate(plan, assertions, cfg.shots, cfg.family_alpha, exec_seed, cfg.jobs);
    for (auto& v : verdicts)
        v.input_seed = case_seed;
    return verdicts;
}

} // namespace qprop
