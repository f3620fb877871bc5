#include "debate/harness.hpp"

#include <algorithm>
#include <thread>

#include "debate/catalogue.hpp"
#include "debate/compile.hpp"
#include "debate/error.hpp"

namespace debate {

ProtocolId parse_protocol(const std::string& text)
{
    if (text == "bisection") return ProtocolId::Bisection;
    if (text == "crossexam") return ProtocolId::CrossExam;
    if (text == "stochastic") return ProtocolId::Stochastic;
    if (text == "witness-det") return ProtocolId::WitnessDet;
    if (text == "witness-stoch") return ProtocolId::WitnessStoch;
    throw Error(ErrorCode::BadParameter,
                "protocol must be bisection, crossexam, stochastic, witness-det or witness-stoch; got '" + text + "'");
}

std::string to_string(ProtocolId p)
{
    switch (p) {
    case ProtocolId::Bisection: return "bisection";
    case ProtocolId::CrossExam: return "crossexam";
    case ProtocolId::Stochastic: return "stochastic";
    case ProtocolId::WitnessDet: return "witness-det";
    case ProtocolId::WitnessStoch: return "witness-stoch";
    }
    return "?";
}

std::string Subject::describe() const
{
    std::string name = machine ? machine->name() : program ? program->name() : "?";
    return to_string(protocol) + " " + name + " x=" + bits_to_string(x);
}

DebateOutcome run_debate(const Subject& s, Strategy& a, Strategy& b, std::uint64_t seed, const RunOptions& options)
{
    const auto need_program = [&]() -> const StepProgram& {
        if (!s.program) throw Error(ErrorCode::BadParameter, to_string(s.protocol) + " needs a step program");
        return *s.program;
    };
    switch (s.protocol) {
    case ProtocolId::Bisection:
        if (!s.machine) throw Error(ErrorCode::BadParameter, "bisection needs a tape machine");
        return run_bisection(*s.machine, s.x, s.oracle, a, b, seed, options);
    case ProtocolId::CrossExam:
        if (!s.program && s.machine) {
            const StepProgram compiled = compile_vm_trace(*s.machine, s.x, s.oracle);
            return run_crossexam(compiled, s.x, s.oracle, a, b, seed, options);
        }
        return run_crossexam(need_program(), s.x, s.oracle, a, b, seed, options);
    case ProtocolId::Stochastic:
        return run_stochastic(need_program(), s.x, s.oracle, a, b, s.params, seed, options);
    case ProtocolId::WitnessDet:
        return run_witness(WitnessMode::Det, need_program(), s.x, s.witness_length, s.oracle, a, b, s.params, seed,
                           options);
    case ProtocolId::WitnessStoch:
        return run_witness(WitnessMode::Stoch, need_program(), s.x, s.witness_length, s.oracle, a, b, s.params, seed,
                           options);
    }
    throw Error(ErrorCode::BadParameter, "unknown protocol");
}

DebateOutcome run_debate(const Subject& s, const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed,
                         const RunOptions& options)
{
    const std::unique_ptr<Strategy> sa = make_adversary(a);
    const std::unique_ptr<Strategy> sb = make_adversary(b);
    return run_debate(s, *sa, *sb, seed, options);
}

namespace {

struct TrialRecord {
    bool error = false;
    std::string message;
    DebateOutcome outcome;
};

TrialRecord run_trial(const Subject& s, const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed)
{
    TrialRecord rec;
    try {
        rec.outcome = run_debate(s, a, b, seed);
    } catch (const std::exception& e) {
        rec.error = true;
        rec.message = e.what();
    }
    return rec;
}

} // namespace

AcceptanceEstimate estimate_acceptance(const Subject& s, const AdversarySpec& a, const AdversarySpec& b,
                                       std::uint64_t trials, std::uint64_t master_seed, unsigned threads)
{
    if (trials == 0) throw Error(ErrorCode::BadParameter, "trials must be at least 1");
    // A compiled trace is shared by every trial of a cross-examination.
    Subject local = s;
    if (local.protocol == ProtocolId::CrossExam && !local.program && local.machine) {
        local.program = compile_vm_trace(*local.machine, local.x, local.oracle);
    }

    std::vector<TrialRecord> records(trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < trials; ++i) records[i] = run_trial(local, a, b, trial_seed(master_seed, i));
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t i = w; i < trials; i += workers) {
                    records[i] = run_trial(local, a, b, trial_seed(master_seed, i));
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    AcceptanceEstimate est;
    est.label = "A=" + a.str() + " B=" + b.str();
    est.requested = trials;
    for (const TrialRecord& r : records) {
        if (r.error) {
            if (est.errors++ == 0) est.first_error = r.message;
            continue;
        }
        const DebateOutcome& o = r.outcome;
        ++est.trials;
        est.successes += o.verdict;
        if (o.forfeit) (o.forfeit->party == Party::A ? est.forfeits_a : est.forfeits_b)++;
        if (o.abort_round) ++est.aborts;
        const Counters& c = o.counters;
        est.means.verifier_oracle_queries += static_cast<double>(c.verifier_oracle_queries);
        est.means.verifier_bits_read += static_cast<double>(c.verifier_bits_read);
        est.means.verifier_configurations_read += static_cast<double>(c.verifier_configurations_read);
        est.means.proverA_steps += static_cast<double>(c.proverA_steps);
        est.means.proverB_steps += static_cast<double>(c.proverB_steps);
        est.means.proverA_oracle_samples += static_cast<double>(c.proverA_oracle_samples);
        est.means.proverB_oracle_samples += static_cast<double>(c.proverB_oracle_samples);
        est.max_verifier_oracle_queries = std::max(est.max_verifier_oracle_queries, c.verifier_oracle_queries);
        est.max_verifier_bits_read = std::max(est.max_verifier_bits_read, c.verifier_bits_read);
    }
    if (est.trials > 0) {
        const double n = static_cast<double>(est.trials);
        est.estimate = static_cast<double>(est.successes) / n;
        for (double* m : {&est.means.verifier_oracle_queries, &est.means.verifier_bits_read,
                          &est.means.verifier_configurations_read, &est.means.proverA_steps, &est.means.proverB_steps,
                          &est.means.proverA_oracle_samples, &est.means.proverB_oracle_samples}) {
            *m /= n;
        }
    }
    est.ci = wilson_interval(est.successes, est.trials);
    return est;
}

namespace {

std::uint64_t require_seed(const ExperimentConfig& cfg)
{
    if (!cfg.seed) throw Error(ErrorCode::BadParameter, "a seed is required");
    return *cfg.seed;
}

} // namespace

AcceptanceEstimate estimate_acceptance(const ExperimentConfig& cfg)
{
    return estimate_acceptance(cfg.subject, cfg.strategy_a, cfg.strategy_b, cfg.trials, require_seed(cfg), cfg.threads);
}

SweepResult adversary_sweep(const Subject& s, const AdversarySpec& fixed, Party side,
                            const std::vector<AdversarySpec>& family, std::uint64_t trials, std::uint64_t master_seed,
                            unsigned threads)
{
    SweepResult out;
    out.side = side;
    out.objective = side == Party::A ? Objective::Max : Objective::Min;
    for (const AdversarySpec& adv : family) {
        const AdversarySpec& a = side == Party::A ? adv : fixed;
        const AdversarySpec& b = side == Party::A ? fixed : adv;
        out.rows.push_back({adv, estimate_acceptance(s, a, b, trials, master_seed, threads)});
        const double v = out.rows.back().estimate.estimate;
        if (!out.extreme) {
            out.extreme = 0;
        } else {
            const double best = out.rows[*out.extreme].estimate.estimate;
            if ((out.objective == Objective::Max && v > best) || (out.objective == Objective::Min && v < best)) {
                out.extreme = out.rows.size() - 1;
            }
        }
    }
    return out;
}

SweepResult adversary_sweep(const ExperimentConfig& cfg)
{
    const AdversarySpec& fixed = cfg.family_side == Party::A ? cfg.strategy_b : cfg.strategy_a;
    return adversary_sweep(cfg.subject, fixed, cfg.family_side, cfg.family, cfg.trials, require_seed(cfg), cfg.threads);
}

PayoffMatrix payoff_matrix(const Subject& s, const std::vector<AdversarySpec>& as,
                           const std::vector<AdversarySpec>& bs, std::uint64_t trials, std::uint64_t master_seed,
                           unsigned threads)
{
    PayoffMatrix out;
    out.rows = as;
    out.cols = bs;
    out.cells.resize(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = 0; j < bs.size(); ++j) {
            out.cells[i].push_back(estimate_acceptance(s, as[i], bs[j], trials, master_seed, threads));
        }
    }
    if (bs.empty() || as.empty()) return out;
    for (std::size_t i = 0; i < as.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < bs.size(); ++j) {
            if (out.payoff_a(i, j) < out.payoff_a(i, best)) best = j;
        }
        out.best_response_b.push_back(best);
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < as.size(); ++i) {
            if (out.payoff_a(i, j) > out.payoff_a(best, j)) best = i;
        }
        out.best_response_a.push_back(best);
    }
    return out;
}

PayoffMatrix payoff_matrix(const ExperimentConfig& cfg)
{
    return payoff_matrix(cfg.subject, cfg.matrix_a, cfg.matrix_b, cfg.trials, require_seed(cfg), cfg.threads);
}

namespace {

AdversarySpec spec(std::string family, std::map<std::string, std::string> params = {})
{
    return AdversarySpec{std::move(family), std::move(params)};
}

void selector_strings(std::string& prefix, std::uint32_t left, std::vector<AdversarySpec>& out)
{
    if (left == 0) {
        out.push_back(spec("FixedSelectors", {{"bits", prefix}}));
        return;
    }
    for (const char c : {'0', '1', 'c'}) {
        prefix.push_back(c);
        selector_strings(prefix, left - 1, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<AdversarySpec> bisection_a_family(const ConfigurationMachine& m)
{
    std::vector<AdversarySpec> out{spec("Honest"), spec("LyingFinalBit")};
    const std::uint32_t bits = m.serialized_bits();
    for (std::uint32_t j = 0; j <= m.time(); ++j) {
        for (const char* forge : {"flip", "resimulate"}) {
            out.push_back(spec("MidpointCorruptor", {{"lie_from", std::to_string(j)}, {"forge", forge}}));
            for (std::uint32_t b = 0; b < bits; ++b) {
                out.push_back(spec("MidpointCorruptor",
                                   {{"lie_from", std::to_string(j)}, {"flip", std::to_string(b)}, {"forge", forge}}));
            }
        }
    }
    const std::uint32_t rounds = ceil_log2(m.time());
    for (std::uint32_t k = 0; k < rounds; ++k) {
        for (std::uint32_t b = 0; b < bits; ++b) {
            out.push_back(spec("MidpointCorruptor", {{"round", std::to_string(k)}, {"mask", std::to_string(b)}}));
        }
    }
    return out;
}

std::vector<AdversarySpec> bisection_b_family(const ConfigurationMachine& m)
{
    std::vector<AdversarySpec> out{spec("Honest"), spec("NeverAbort"), spec("FrivolousAccuser", {{"b", "0"}}),
                                   spec("FrivolousAccuser", {{"b", "1"}}), spec("WrongReadSet")};
    std::string prefix;
    selector_strings(prefix, ceil_log2(m.time()), out);
    return out;
}

std::vector<AdversarySpec> crossexam_a_family(const StepProgram& p)
{
    std::vector<AdversarySpec> out{spec("Honest"), spec("LyingFinalBit")};
    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        for (std::uint32_t b = 0; b < p.width(); ++b) {
            for (const char* consistent : {"0", "1"}) {
                out.push_back(spec("TranscriptCorruptor",
                                   {{"cells", std::to_string(t) + ":" + std::to_string(b)}, {"consistent", consistent}}));
            }
        }
    }
    return out;
}

std::vector<AdversarySpec> crossexam_b_family(const StepProgram& p)
{
    std::vector<AdversarySpec> out{spec("Honest"), spec("NeverAbort")};
    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        out.push_back(spec("FrivolousAccuser", {{"t", std::to_string(t)}}));
        out.push_back(spec("WrongReadSet", {{"t", std::to_string(t)}}));
    }
    return out;
}

namespace {

class Checker {
public:
    Checker(const ExhaustiveOptions& options, ExhaustiveReport& report) : options_(options), report_(report) {}

    template <typename Run, typename Budget>
    void families(const std::string& subject, const Bits& x, std::uint8_t truth, const std::vector<AdversarySpec>& as,
                  const std::vector<AdversarySpec>& bs, Run&& run, Budget&& budget)
    {
        ++report_.cases;
        const AdversarySpec honest = spec("Honest");
        const std::vector<AdversarySpec>& varied = truth ? bs : as;
        for (const AdversarySpec& adv : varied) {
            const AdversarySpec& a = truth ? honest : adv;
            const AdversarySpec& b = truth ? adv : honest;
            const std::uint64_t seed = report_.runs++;
            RunOptions opts;
            opts.fault = options_.fault;
            DebateOutcome out = run(a, b, seed, opts);
            if (truth) {
                ++report_.runs_in;
                report_.accepted_in += out.verdict;
            } else {
                ++report_.runs_out;
                report_.accepted_out += out.verdict;
            }
            std::string problem;
            if (out.verdict != truth) problem = "verdict " + std::to_string(out.verdict) + " expected " + std::to_string(truth);
            const std::string over = budget(out);
            if (!over.empty()) {
                ++report_.budget_violations;
                problem += (problem.empty() ? "" : "; ") + over;
            }
            if (problem.empty()) continue;
            ++report_.counterexample_count;
            if (report_.counterexamples.size() < options_.keep) {
                opts.record_log = true;
                report_.counterexamples.push_back({subject, x, a, b, truth, problem, run(a, b, seed, opts)});
            }
        }
    }

    void crossexam(const StepProgram& p, const Bits& x, const StochasticOracle& o, std::uint8_t truth,
                   const std::string& subject)
    {
        families(
            subject, x, truth, crossexam_a_family(p), crossexam_b_family(p),
            [&](const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed, const RunOptions& opts) {
                const auto sa = make_adversary(a);
                const auto sb = make_adversary(b);
                return run_crossexam(p, x, o, *sa, *sb, seed, opts);
            },
            [&](const DebateOutcome& out) -> std::string {
                if (out.counters.verifier_oracle_queries > 1) return "more than one oracle query";
                if (out.checked_step && out.counters.verifier_bits_read > crossexam_bit_budget(p, *out.checked_step)) {
                    return "bit budget exceeded";
                }
                return {};
            });
    }

private:
    const ExhaustiveOptions& options_;
    ExhaustiveReport& report_;
};

} // namespace

ExhaustiveReport exhaustive_soundness_check(const std::vector<MachineEntry>& machines,
                                            const std::vector<ProgramEntry>& programs,
                                            const ExhaustiveOptions& options)
{
    ExhaustiveReport report;
    Checker check(options, report);
    for (const MachineEntry& e : machines) {
        const ConfigurationMachine& m = e.machine;
        if (m.time() > 16 || m.space() > 8) {
            throw Error(ErrorCode::BadParameter, m.name() + ": exhaustive check needs T <= 16 and S <= 8");
        }
        ++report.machines;
        const std::vector<AdversarySpec> as = options.bisection ? bisection_a_family(m) : std::vector<AdversarySpec>{};
        const std::vector<AdversarySpec> bs = options.bisection ? bisection_b_family(m) : std::vector<AdversarySpec>{};
        const std::uint64_t config_budget = ceil_log2(m.time()) + 2;
        for (const Bits& x : e.inputs) {
            const std::uint8_t truth = vm_run(m, x, e.oracle, std::uint64_t{0}, false).output;
            if (options.bisection) {
                check.families(
                    "bisection " + m.name(), x, truth, as, bs,
                    [&](const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed, const RunOptions& opts) {
                        const auto sa = make_adversary(a);
                        const auto sb = make_adversary(b);
                        return run_bisection(m, x, e.oracle, *sa, *sb, seed, opts);
                    },
                    [&](const DebateOutcome& out) -> std::string {
                        if (out.counters.verifier_oracle_queries > 1) return "more than one oracle query";
                        if (out.counters.verifier_configurations_read > config_budget) return "configuration budget exceeded";
                        return {};
                    });
            }
            if (options.crossexam) {
                const StepProgram p = compile_vm_trace(m, x, e.oracle);
                check.crossexam(p, x, e.oracle, truth, "crossexam " + p.name());
            }
        }
    }
    if (options.crossexam) {
        for (const ProgramEntry& e : programs) {
            ++report.programs;
            for (const Bits& x : e.inputs) {
                const std::uint8_t truth = sp_run(e.program, x, e.oracle, std::uint64_t{0}).output;
                check.crossexam(e.program, x, e.oracle, truth, "crossexam " + e.program.name());
            }
        }
    }
    if (options.throw_on_counterexample && !report.ok()) {
        const Counterexample& c = report.counterexamples.front();
        throw Error(ErrorCode::CounterexampleFound, c.subject + " x=" + bits_to_string(c.x) + " A=" + c.a.str() +
                                                        " B=" + c.b.str() + ": " + c.problem +
                                                        " (seed " + std::to_string(c.outcome.seed) + ")");
    }
    return report;
}

std::vector<MachineEntry> exhaustive_machine_set()
{
    std::vector<MachineEntry> out;
    for (MachineCase& c : stock_machines()) out.push_back({std::move(c.machine), std::move(c.oracle), std::move(c.inputs)});
    const StochasticOracle none = StochasticOracle::constant(0, UnitRational::zero());
    const std::vector<Bits> inputs = all_inputs(1);
    for (ConfigurationMachine& m : two_state_machines()) out.push_back({std::move(m), none, inputs});
    return out;
}

std::vector<ProgramEntry> exhaustive_program_set()
{
    std::vector<ProgramEntry> out;
    for (ProgramCase& c : stock_programs()) out.push_back({std::move(c.program), std::move(c.oracle), std::move(c.inputs)});
    return out;
}

} // namespace debate
