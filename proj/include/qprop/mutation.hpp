#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qprop/circuit.hpp"
#include "qprop/property.hpp"

namespace qprop {

enum class MutantKind { Faulty, Equivalent };

const char* mutant_kind_name(MutantKind k);

struct MutantRecord {
    std::string id;
    MutantKind kind = MutantKind::Faulty;
    Digest base_digest;
    Circuit circuit;
    std::string operator_desc;
    std::uint64_t seed = 0;
};

/// Seeded gate-level mutants: one uniformly chosen insert/delete/replace at a
/// uniformly chosen site per mutant. Candidates whose statevector matches the
/// base up to global phase are screened out and regenerated, as are
/// structural duplicates, so every returned mutant is a genuine fault.
/// Requires a measurement-free circuit with at least one gate; gives up with
/// an error after 1000 rejected candidates for one mutant.
std::vector<MutantRecord> generate_faulty_mutants(const Circuit& base, int count,
                                                  std::uint64_t seed, std::string id_prefix = "");

/// Seeded equivalent mutants: one self-cancelling gate identity pair from the
/// catalog {HH, XX, YY, ZZ, S Sdg, T Tdg, CXCX, SWAPSWAP} inserted at a
/// random site. Each is verified unitarily equal to the base (statevector
/// check, 1e-9); any kill on these is a statistical false positive by
/// construction.
std::vector<MutantRecord> generate_equivalent_mutants(const Circuit& base, int count,
                                                      std::uint64_t seed,
                                                      std::string id_prefix = "");

struct SweepRow {
    std::string algorithm;
    std::string mutant_id;
    MutantKind mutant_kind = MutantKind::Faulty;
    int num_properties = 0;
    int num_inputs = 0;
    int shots = 0;
    bool killed = false;
    bool error = false;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
};

/// Killed fraction over the rows, optionally restricted to one mutant kind.
/// On the equivalent kind this is the false-positive rate.
double mutation_score(const std::vector<SweepRow>& rows,
                      std::optional<MutantKind> kind = std::nullopt);

struct SweepConfig {
    std::vector<int> properties_counts; // subset of {1,2,3}
    std::vector<int> input_counts;      // subset of {1,2,4,8,16,32,64}
    std::vector<int> shot_counts;       // subset of {12,...,3200}
    int repetitions = 1;
    double family_alpha = 0.05;
    int max_precondition_attempts = 100;
    std::uint64_t base_seed = 0;
    int jobs = 1;
};

void validate_sweep_config(const SweepConfig& cfg);

struct SweepAlgorithm {
    std::string name;
    std::function<std::vector<Property>(const Circuit&)> properties;
    std::vector<MutantRecord> mutants;
};

struct SweepSummaryRow {
    std::string variable; // num_properties | num_inputs | shots
    MutantKind mutant_kind = MutantKind::Faulty;
    double spearman_r = 0.0;
    double p_value = 1.0;
    int n = 0;
    bool defined = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepSummaryRow> summary;
};

/// Runs the full Cartesian grid: every (property count, input count, shots)
/// configuration against every mutant of every algorithm, `repetitions`
/// times. A kill is any property failure; rows that raise record a kill with
/// the error flag instead of aborting the sweep. The summary correlates
/// per-(algorithm, configuration, repetition) mutation scores with each
/// independent variable, per mutant kind. Apart from wall times, the result
/// is a pure function of (algorithms, cfg), whatever the job count.
SweepResult run_sweep(const std::vector<SweepAlgorithm>& algorithms, const SweepConfig& cfg);

/// CSV emission. Columns are part of the external contract:
/// rows:    algorithm,mutant_id,mutant_kind,num_properties,num_inputs,shots,
///          killed,error,wall_time_s,seed
/// summary: variable,mutant_kind,spearman_r,p_value,n
void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SweepSummaryRow>& summary);

} // namespace qprop
