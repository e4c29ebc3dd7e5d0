#include "qprop/mutation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qprop/parallel.hpp"
#include "qprop/rng.hpp"
#include "qprop/simulator.hpp"
#include "qprop/stats.hpp"

namespace qprop {

const char* mutant_kind_name(MutantKind k) {
    return k == MutantKind::Faulty ? "faulty" : "equivalent";
}

namespace {

std::vector<Gate> gate_list(const Circuit& c) {
    std::vector<Gate> gates;
    for (const auto& op : c.ops()) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g)
            throw std::invalid_argument(
                "mutation: only measurement-free gate circuits can be mutated");
        gates.push_back(*g);
    }
    return gates;
}

Circuit rebuild(int num_qubits, const std::vector<Gate>& gates) {
    CircuitBuilder builder(num_qubits);
    for (const Gate& g : gates)
        builder.gate(g);
    return builder.take();
}

const GateKind kOneQubitKinds[] = {GateKind::H,  GateKind::X,   GateKind::Y,  GateKind::Z,
                                   GateKind::S,  GateKind::Sdg, GateKind::T,  GateKind::Tdg,
                                   GateKind::RX, GateKind::RY,  GateKind::RZ, GateKind::P,
                                   GateKind::U};
const GateKind kTwoQubitKinds[] = {GateKind::CX, GateKind::CZ, GateKind::SWAP, GateKind::CP};

std::vector<double> random_params(GateKind kind, Rng& rng) {
    std::vector<double> params;
    for (int i = 0; i < gate_param_count(kind); ++i)
        params.push_back(rng.next_double() * 2.0 * M_PI);
    return params;
}

Gate random_gate(int num_qubits, Rng& rng) {
    std::vector<GateKind> kinds(std::begin(kOneQubitKinds), std::end(kOneQubitKinds));
    if (num_qubits >= 2)
        kinds.insert(kinds.end(), std::begin(kTwoQubitKinds), std::end(kTwoQubitKinds));
    const GateKind kind = kinds[rng.next_below(kinds.size())];
    std::vector<int> qubits;
    qubits.push_back(static_cast<int>(rng.next_below(num_qubits)));
    if (gate_arity(kind) == 2) {
        int second = static_cast<int>(rng.next_below(num_qubits - 1));
        if (second >= qubits[0])
            ++second;
        qubits.push_back(second);
    }
    return Gate{kind, random_params(kind, rng), std::move(qubits)};
}

std::string describe_gate(const Gate& g) {
    std::ostringstream os;
    os << gate_name(g.kind);
    os << '(';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        if (i)
            os << ',';
        os << 'q' << g.qubits[i];
    }
    os << ')';
    return os.str();
}

// Statevector check on |0...0>: equal up to global phase.
bool acts_like(const Circuit& a, const Circuit& b, double tol) {
    const StateVector sa = simulate_statevector(a);
    const StateVector sb = simulate_statevector(b);
    return StateVector::fidelity(sa, sb) >= 1.0 - tol;
}

} // namespace

std::vector<MutantRecord> generate_faulty_mutants(const Circuit& base, int count,
                                                  std::uint64_t seed, std::string id_prefix) {
    const std::vector<Gate> gates = gate_list(base);
    if (gates.empty())
        throw std::invalid_argument("generate_faulty_mutants: base circuit has no gates");
    if (count < 0)
        throw std::invalid_argument("generate_faulty_mutants: negative count");

    const Digest base_digest = canonical_hash(base);
    std::vector<MutantRecord> out;
    std::set<Digest> seen;
    seen.insert(base_digest);

    for (int m = 0; m < count; ++m) {
        bool produced = false;
        for (int attempt = 0; attempt < 1000 && !produced; ++attempt) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(m),
                                       static_cast<std::uint64_t>(attempt)}));
            std::vector<Gate> mutated = gates;
            std::string desc;
            const std::uint64_t op = rng.next_below(3);
            if (op == 0) { // insert
                const std::size_t site = rng.next_below(mutated.size() + 1);
                Gate g = random_gate(base.num_qubits(), rng);
                desc = "insert " + describe_gate(g) + " at " + std::to_string(site);
                mutated.insert(mutated.begin() + static_cast<std::ptrdiff_t>(site),
                               std::move(g));
            } else if (op == 1) { // delete
                const std::size_t site = rng.next_below(mutated.size());
                desc = "delete " + describe_gate(mutated[site]) + " at " + std::to_string(site);
                mutated.erase(mutated.begin() + static_cast<std::ptrdiff_t>(site));
            } else { // replace, preserving arity and operands
                const std::size_t site = rng.next_below(mutated.size());
                const Gate& orig = mutated[site];
                std::vector<GateKind> candidates;
                if (gate_arity(orig.kind) == 1)
                    candidates.assign(std::begin(kOneQubitKinds), std::end(kOneQubitKinds));
                else if (gate_arity(orig.kind) == 2)
                    candidates.assign(std::begin(kTwoQubitKinds), std::end(kTwoQubitKinds));
                else
                    continue; // no same-arity alternative; try another draw
                candidates.erase(std::remove(candidates.begin(), candidates.end(), orig.kind),
                                 candidates.end());
                const GateKind kind = candidates[rng.next_below(candidates.size())];
                Gate g{kind, random_params(kind, rng), orig.qubits};
                desc = "replace " + describe_gate(orig) + " with " + describe_gate(g) + " at " +
                       std::to_string(site);
                mutated[site] = std::move(g);
            }

            Circuit candidate = rebuild(base.num_qubits(), mutated);
            const Digest digest = canonical_hash(candidate);
            if (seen.count(digest))
                continue;
            if (acts_like(base, candidate, 1e-9))
                continue; // accidentally equivalent; redraw
            seen.insert(digest);

            std::ostringstream id;
            id << id_prefix << 'f';
            id.width(2);
            id.fill('0');
            id << m;
            out.push_back(MutantRecord{id.str(), MutantKind::Faulty, base_digest,
                                       std::move(candidate), desc,
                                       derive_seed(seed, {static_cast<std::uint64_t>(m)})});
            produced = true;
        }
        if (!produced)
            throw std::runtime_error(
                "generate_faulty_mutants: could not produce a non-equivalent mutant within "
                "1000 attempts");
    }
    return out;
}

namespace {

struct IdentityPair {
    GateKind first;
    GateKind second;
    int arity;
    const char* name;
};

const IdentityPair kIdentityCatalog[] = {
    {GateKind::H, GateKind::H, 1, "HH"},
    {GateKind::X, GateKind::X, 1, "XX"},
    {GateKind::Y, GateKind::Y, 1, "YY"},
    {GateKind::Z, GateKind::Z, 1, "ZZ"},
    {GateKind::S, GateKind::Sdg, 1, "S.Sdg"},
    {GateKind::T, GateKind::Tdg, 1, "T.Tdg"},
    {GateKind::CX, GateKind::CX, 2, "CX.CX"},
    {GateKind::SWAP, GateKind::SWAP, 2, "SWAP.SWAP"},
};

} // namespace

std::vector<MutantRecord> generate_equivalent_mutants(const Circuit& base, int count,
                                                      std::uint64_t seed,
                                                      std::string id_prefix) {
    const std::vector<Gate> gates = gate_list(base);
    if (count < 0)
        throw std::invalid_argument("generate_equivalent_mutants: negative count");

    const Digest base_digest = canonical_hash(base);
    std::vector<MutantRecord> out;
    std::set<Digest> seen;
    seen.insert(base_digest);

    for (int m = 0; m < count; ++m) {
        bool produced = false;
        for (int attempt = 0; attempt < 1000 && !produced; ++attempt) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(m),
                                       static_cast<std::uint64_t>(attempt), 0x5eedULL}));
            std::vector<IdentityPair> usable(std::begin(kIdentityCatalog),
                                             std::end(kIdentityCatalog));
            if (base.num_qubits() < 2) {
                usable.erase(std::remove_if(usable.begin(), usable.end(),
                                            [](const IdentityPair& p) { return p.arity == 2; }),
                             usable.end());
            }
            const IdentityPair pair = usable[rng.next_below(usable.size())];
            std::vector<int> qubits;
            qubits.push_back(static_cast<int>(rng.next_below(base.num_qubits())));
            if (pair.arity == 2) {
                int second = static_cast<int>(rng.next_below(base.num_qubits() - 1));
                if (second >= qubits[0])
                    ++second;
                qubits.push_back(second);
            }
            const std::size_t site = rng.next_below(gates.size() + 1);

            std::vector<Gate> mutated = gates;
            mutated.insert(mutated.begin() + static_cast<std::ptrdiff_t>(site),
                           Gate{pair.second, {}, qubits});
            mutated.insert(mutated.begin() + static_cast<std::ptrdiff_t>(site),
                           Gate{pair.first, {}, qubits});
            Circuit candidate = rebuild(base.num_qubits(), mutated);

            const Digest digest = canonical_hash(candidate);
            if (seen.count(digest))
                continue;
            if (!acts_like(base, candidate, 1e-9))
                throw std::logic_error(
                    "generate_equivalent_mutants: identity catalog produced a non-equivalent "
                    "circuit");
            seen.insert(digest);

            std::ostringstream id;
            id << id_prefix << 'e';
            id.width(2);
            id.fill('0');
            id << m;
            std::ostringstream desc;
            desc << "insert identity " << pair.name << " on q" << qubits[0];
            if (qubits.size() == 2)
                desc << ",q" << qubits[1];
            desc << " at " << site;
            out.push_back(MutantRecord{id.str(), MutantKind::Equivalent, base_digest,
                                       std::move(candidate), desc.str(),
                                       derive_seed(seed, {static_cast<std::uint64_t>(m)})});
            produced = true;
        }
        if (!produced)
            throw std::runtime_error(
                "generate_equivalent_mutants: could not produce a fresh mutant within 1000 "
                "attempts");
    }
    return out;
}

double mutation_score(const std::vector<SweepRow>& rows, std::optional<MutantKind> kind) {
    std::size_t total = 0, killed = 0;
    for (const SweepRow& r : rows) {
        if (kind && r.mutant_kind != *kind)
            continue;
        ++total;
        killed += r.killed ? 1 : 0;
    }
    if (total == 0)
        throw std::invalid_argument("mutation_score: empty row set");
    return static_cast<double>(killed) / static_cast<double>(total);
}

void validate_sweep_config(const SweepConfig& cfg) {
    const std::set<int> allowed_props = {1, 2, 3};
    const std::set<int> allowed_inputs = {1, 2, 4, 8, 16, 32, 64};
    const std::set<int> allowed_shots = {12, 25, 50, 100, 200, 400, 800, 1600, 3200};

    if (cfg.properties_counts.empty() || cfg.input_counts.empty() || cfg.shot_counts.empty())
        throw std::invalid_argument("sweep: every variable needs at least one value");
    for (int p : cfg.properties_counts)
        if (!allowed_props.count(p))
            throw std::invalid_argument("sweep: property count outside {1,2,3}");
    for (int i : cfg.input_counts)
        if (!allowed_inputs.count(i))
            throw std::invalid_argument("sweep: input count outside {1,2,4,8,16,32,64}");
    for (int s : cfg.shot_counts)
        if (!allowed_shots.count(s))
            throw std::invalid_argument(
                "sweep: shot count outside {12,25,50,100,200,400,800,1600,3200}");
    if (cfg.repetitions < 1)
        throw std::invalid_argument("sweep: repetitions must be positive");
}

SweepResult run_sweep(const std::vector<SweepAlgorithm>& algorithms, const SweepConfig& cfg) {
    validate_sweep_config(cfg);
    if (algorithms.empty())
        throw std::invalid_argument("sweep: no algorithms");
    for (const auto& a : algorithms)
        if (a.mutants.empty())
            throw std::invalid_argument("sweep: algorithm '" + a.name + "' has no mutants");

    struct Task {
        std::size_t algorithm;
        std::size_t mutant;
        int num_properties;
        int num_inputs;
        int shots;
        int repetition;
    };
    std::vector<Task> tasks;
    for (std::size_t a = 0; a < algorithms.size(); ++a)
        for (std::size_t m = 0; m < algorithms[a].mutants.size(); ++m)
            for (int p : cfg.properties_counts)
                for (int i : cfg.input_counts)
                    for (int s : cfg.shot_counts)
                        for (int rep = 0; rep < cfg.repetitions; ++rep)
                            tasks.push_back({a, m, p, i, s, rep});

    SweepResult result;
    result.rows.resize(tasks.size());

    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t t) {
        const Task& task = tasks[t];
        const SweepAlgorithm& algo = algorithms[task.algorithm];
        const MutantRecord& mutant = algo.mutants[task.mutant];

        SweepRow row;
        row.algorithm = algo.name;
        row.mutant_id = mutant.id;
        row.mutant_kind = mutant.kind;
        row.num_properties = task.num_properties;
        row.num_inputs = task.num_inputs;
        row.shots = task.shots;
        row.seed = derive_seed(cfg.base_seed,
                               {hash_string(algo.name), hash_string(mutant.id),
                                static_cast<std::uint64_t>(task.num_properties),
                                static_cast<std::uint64_t>(task.num_inputs),
                                static_cast<std::uint64_t>(task.shots),
                                static_cast<std::uint64_t>(task.repetition)});

        const auto started = std::chrono::steady_clock::now();
        try {
            std::vector<Property> props = algo.properties(mutant.circuit);
            if (static_cast<std::size_t>(task.num_properties) > props.size())
                throw std::invalid_argument("sweep: fixture has fewer properties than requested");
            props.resize(static_cast<std::size_t>(task.num_properties));

            TestConfig tc;
            tc.num_inputs = task.num_inputs;
            tc.shots = task.shots;
            tc.family_alpha = cfg.family_alpha;
            tc.max_precondition_attempts = cfg.max_precondition_attempts;
            tc.base_seed = row.seed;
            tc.jobs = 1; // rows are the unit of parallelism

            const SuiteResult suite = run_suite(props, tc);
            row.killed = !suite.all_passed();
            for (const auto& pr : suite.properties)
                if (pr.status == PropertyStatus::ExecutionError)
                    row.error = true;
        } catch (const std::exception&) {
            row.killed = true;
            row.error = true;
        }
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.rows[t] = std::move(row);
    });

    // Summary: per-(algorithm, configuration, repetition) scores per kind,
    // correlated against each variable.
    struct Point {
        double properties;
        double inputs;
        double shots;
        double score;
    };
    std::vector<Point> points[2];

    std::map<std::tuple<std::size_t, int, int, int, int>, std::pair<int, int>> tallies[2];
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Task& task = tasks[t];
        const int k = result.rows[t].mutant_kind == MutantKind::Faulty ? 0 : 1;
        auto& tally = tallies[k][{task.algorithm, task.num_properties, task.num_inputs,
                                  task.shots, task.repetition}];
        ++tally.first;
        tally.second += result.rows[t].killed ? 1 : 0;
    }
    for (int k = 0; k < 2; ++k) {
        for (const auto& [key, tally] : tallies[k]) {
            points[k].push_back(Point{static_cast<double>(std::get<1>(key)),
                                      static_cast<double>(std::get<2>(key)),
                                      static_cast<double>(std::get<3>(key)),
                                      static_cast<double>(tally.second) /
                                          static_cast<double>(tally.first)});
        }
    }

    const char* variables[] = {"num_properties", "num_inputs", "shots"};
    for (int k = 0; k < 2; ++k) {
        const MutantKind kind = k == 0 ? MutantKind::Faulty : MutantKind::Equivalent;
        for (int v = 0; v < 3; ++v) {
            SweepSummaryRow srow;
            srow.variable = variables[v];
            srow.mutant_kind = kind;
            srow.n = static_cast<int>(points[k].size());
            if (points[k].size() >= 3) {
                std::vector<double> xs, ys;
                for (const Point& pt : points[k]) {
                    xs.push_back(v == 0 ? pt.properties : v == 1 ? pt.inputs : pt.shots);
                    ys.push_back(pt.score);
                }
                const SpearmanResult sp = spearman_rank(xs, ys);
                srow.defined = sp.defined;
                srow.spearman_r = sp.r;
                srow.p_value = sp.p;
            }
            result.summary.push_back(std::move(srow));
        }
    }
    return result;
}

namespace {

std::string csv_double(double v) {
    if (std::isnan(v))
        return "nan";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "algorithm,mutant_id,mutant_kind,num_properties,num_inputs,shots,killed,error,"
          "wall_time_s,seed\n";
    for (const SweepRow& r : rows) {
        os << r.algorithm << ',' << r.mutant_id << ',' << mutant_kind_name(r.mutant_kind) << ','
           << r.num_properties << ',' << r.num_inputs << ',' << r.shots << ','
           << (r.killed ? "true" : "false") << ',' << (r.error ? "true" : "false") << ','
           << csv_double(r.wall_time_s) << ',' << r.seed << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SweepSummaryRow>& summary) {
    os << "variable,mutant_kind,spearman_r,p_value,n\n";
    for (const SweepSummaryRow& s : summary) {
        os << s.variable << ',' << mutant_kind_name(s.mutant_kind) << ','
           << (s.defined ? csv_double(s.spearman_r) : "nan") << ','
           << (s.defined ? csv_double(s.p_value) : "nan") << ',' << s.n << '\n';
    }
}

} // namespace qprop
