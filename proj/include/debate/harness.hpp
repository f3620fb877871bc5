#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "debate/adversary.hpp"
#include "debate/message.hpp"
#include "debate/params.hpp"
#include "debate/protocol.hpp"
#include "debate/stats.hpp"

namespace debate {

enum class ProtocolId { Bisection, CrossExam, Stochastic, WitnessDet, WitnessStoch };

ProtocolId parse_protocol(const std::string& text);
std::string to_string(ProtocolId p);

/// Everything a single debate needs apart from the two strategies and the seed.
/// Bisection uses `machine`; the other protocols use `program`. A machine
/// given for cross-examination is compiled to its trace first.
struct Subject {
    ProtocolId protocol = ProtocolId::CrossExam;
    std::optional<ConfigurationMachine> machine;
    std::optional<StepProgram> program;
    StochasticOracle oracle = StochasticOracle::constant(0, UnitRational::zero());
    Bits x;
    std::uint32_t witness_length = 0;
    ProtocolParams params;

    std::string describe() const;
};

DebateOutcome run_debate(const Subject& s, Strategy& a, Strategy& b, std::uint64_t seed,
                         const RunOptions& options = {});
DebateOutcome run_debate(const Subject& s, const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed,
                         const RunOptions& options = {});

struct CounterMeans {
    double verifier_oracle_queries = 0;
    double verifier_bits_read = 0;
    double verifier_configurations_read = 0;
    double proverA_steps = 0;
    double proverB_steps = 0;
    double proverA_oracle_samples = 0;
    double proverB_oracle_samples = 0;
};

struct AcceptanceEstimate {
    std::string label;
    std::uint64_t requested = 0;
    std::uint64_t trials = 0; // completed trials (requested - errors)
    std::uint64_t successes = 0;
    std::uint64_t forfeits_a = 0;
    std::uint64_t forfeits_b = 0;
    std::uint64_t aborts = 0;
    std::uint64_t errors = 0;
    double estimate = 0.0;
    Interval ci;
    CounterMeans means;
    std::uint64_t max_verifier_oracle_queries = 0;
    std::uint64_t max_verifier_bits_read = 0;
    std::string first_error;
};

struct ExperimentConfig {
    Subject subject;
    AdversarySpec strategy_a;
    AdversarySpec strategy_b;
    /// Adversaries swept by `sweep`; they replace the side named by family_side.
    std::vector<AdversarySpec> family;
    Party family_side = Party::A;
    /// Row and column strategies of `matrix`.
    std::vector<AdversarySpec> matrix_a;
    std::vector<AdversarySpec> matrix_b;
    std::uint64_t trials = 1;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string out_dir = ".";
    bool trace = false;
};

/// Runs `trials` debates with seeds trial_seed(master, i). Per-trial errors
/// are counted, not rethrown. Results do not depend on `threads`.
AcceptanceEstimate estimate_acceptance(const Subject& s, const AdversarySpec& a, const AdversarySpec& b,
                                       std::uint64_t trials, std::uint64_t master_seed, unsigned threads = 1);
AcceptanceEstimate estimate_acceptance(const ExperimentConfig& cfg);

enum class Objective { Max, Min };

struct SweepRow {
    AdversarySpec adversary;
    AcceptanceEstimate estimate;
};

struct SweepResult {
    Party side = Party::A;
    Objective objective = Objective::Max;
    std::vector<SweepRow> rows;
    /// Row attaining the family max (A sweeps) or min (B sweeps).
    std::optional<std::size_t> extreme;
};

/// One estimate per adversary on `side`, the other side fixed. A-side sweeps
/// report the maximum acceptance, B-side sweeps the minimum.
SweepResult adversary_sweep(const Subject& s, const AdversarySpec& fixed, Party side,
                            const std::vector<AdversarySpec>& family, std::uint64_t trials, std::uint64_t master_seed,
                            unsigned threads = 1);
SweepResult adversary_sweep(const ExperimentConfig& cfg);

struct PayoffMatrix {
    std::vector<AdversarySpec> rows; // A strategies
    std::vector<AdversarySpec> cols; // B strategies
    std::vector<std::vector<AcceptanceEstimate>> cells;
    /// For each row, the column that minimises A's payoff (B's best response).
    std::vector<std::size_t> best_response_b;
    /// For each column, the row that maximises A's payoff.
    std::vector<std::size_t> best_response_a;

    double payoff_a(std::size_t i, std::size_t j) const { return cells[i][j].estimate; }
    double payoff_b(std::size_t i, std::size_t j) const { return 1.0 - cells[i][j].estimate; }
};

PayoffMatrix payoff_matrix(const Subject& s, const std::vector<AdversarySpec>& as,
                           const std::vector<AdversarySpec>& bs, std::uint64_t trials, std::uint64_t master_seed,
                           unsigned threads = 1);
PayoffMatrix payoff_matrix(const ExperimentConfig& cfg);

struct MachineEntry {
    ConfigurationMachine machine;
    StochasticOracle oracle;
    std::vector<Bits> inputs;
};

struct ProgramEntry {
    StepProgram program;
    StochasticOracle oracle;
    std::vector<Bits> inputs;
};

struct Counterexample {
    std::string subject;
    Bits x;
    AdversarySpec a;
    AdversarySpec b;
    std::uint8_t expected = 0;
    std::string problem;
    DebateOutcome outcome; // with message log
};

struct ExhaustiveOptions {
    VerifierFault fault = VerifierFault::None;
    bool bisection = true;
    bool crossexam = true;
    /// Stop collecting after this many counterexamples (the count keeps going).
    std::size_t keep = 16;
    bool throw_on_counterexample = false;
};

struct ExhaustiveReport {
    std::uint64_t machines = 0;
    std::uint64_t programs = 0;
    std::uint64_t cases = 0; // (subject, input) pairs
    std::uint64_t runs = 0;
    std::uint64_t accepted_in = 0; // honest-A runs on x in L that accepted
    std::uint64_t runs_in = 0;
    std::uint64_t accepted_out = 0; // runs on x not in L that accepted
    std::uint64_t runs_out = 0;
    std::uint64_t budget_violations = 0;
    std::uint64_t counterexample_count = 0;
    std::vector<Counterexample> counterexamples;

    bool ok() const { return counterexample_count == 0; }
};

/// Single-message corruptions of A against honest B on x not in L, and every
/// B in the family against honest A on x in L, for both deterministic
/// protocols (machines are compiled for cross-examination). Verdicts must be
/// exactly the machine output and verifier budgets must hold.
/// Requires T <= 16 and S <= 8 for every machine.
ExhaustiveReport exhaustive_soundness_check(const std::vector<MachineEntry>& machines,
                                            const std::vector<ProgramEntry>& programs,
                                            const ExhaustiveOptions& options = {});

/// The default machine and program sets: stock machines, all two-state
/// machines with T = 4, and the stock bit-cell programs.
std::vector<MachineEntry> exhaustive_machine_set();
std::vector<ProgramEntry> exhaustive_program_set();

/// Members of the single-corruption families used by the exhaustive check.
std::vector<AdversarySpec> bisection_a_family(const ConfigurationMachine& m);
std::vector<AdversarySpec> bisection_b_family(const ConfigurationMachine& m);
std::vector<AdversarySpec> crossexam_a_family(const StepProgram& p);
std::vector<AdversarySpec> crossexam_b_family(const StepProgram& p);

} // namespace debate
