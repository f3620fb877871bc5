#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "debate/config.hpp"
#include "debate/error.hpp"
#include "debate/harness.hpp"
#include "debate/machine_io.hpp"
#include "debate/oracle_analysis.hpp"
#include "debate/report.hpp"

using namespace debate;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    bool trace = false;
    std::string fault = "none";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

LoadedConfig load(const Flags& f)
{
    if (f.config.empty()) throw UsageError("--config is required");
    ConfigOverrides o;
    o.seed = f.seed;
    o.trials = f.trials;
    if (f.mode) o.mode = parse_param_mode(*f.mode);
    o.out_dir = f.out;
    o.trace = f.trace;
    return load_config(f.config, o);
}

std::uint64_t seed_of(const ExperimentConfig& cfg)
{
    if (!cfg.seed) throw UsageError("no seed: pass --seed or set 'seed' in the config");
    return *cfg.seed;
}

bool meets(const LoadedConfig& lc, const Interval& ci)
{
    bool ok = true;
    if (lc.expect_min && ci.lo < lc.expect_min->to_double()) {
        std::cout << "expectation failed: lower bound " << ci.lo << " < " << lc.expect_min->str() << "\n";
        ok = false;
    }
    if (lc.expect_max && ci.hi > lc.expect_max->to_double()) {
        std::cout << "expectation failed: upper bound " << ci.hi << " > " << lc.expect_max->str() << "\n";
        ok = false;
    }
    return ok;
}

void print(const AcceptanceEstimate& e)
{
    std::cout << e.label << ": accepted " << e.successes << "/" << e.trials << " estimate=" << e.estimate
              << " ci=[" << e.ci.lo << ", " << e.ci.hi << "] forfeits_a=" << e.forfeits_a
              << " forfeits_b=" << e.forfeits_b << " aborts=" << e.aborts;
    if (e.errors) std::cout << " errors=" << e.errors << " (" << e.first_error << ")";
    std::cout << "\n";
}

int errors_status(const AcceptanceEstimate& e)
{
    if (e.errors == 0) return kOk;
    if (e.errors == e.requested) throw UsageError("every trial failed: " + e.first_error);
    return kFailed;
}

void write_text(const std::string& dir, const std::string& name, const std::string& body)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw UsageError("cannot write " + (std::filesystem::path(dir) / name).string());
    out << body;
}

std::string trace_of(const ExperimentConfig& cfg, const AdversarySpec& a, const AdversarySpec& b, std::uint64_t seed)
{
    RunOptions opts;
    opts.record_log = true;
    const DebateOutcome out = run_debate(cfg.subject, a, b, trial_seed(seed, 0), opts);
    return "# " + a.str() + " vs " + b.str() + "\n" + to_record(out) + "\n" + to_trace(out);
}

int cmd_run_debate(const Flags& f)
{
    const LoadedConfig lc = load(f);
    const ExperimentConfig& cfg = lc.experiment;
    RunOptions opts;
    opts.record_log = cfg.trace;
    const DebateOutcome out = run_debate(cfg.subject, cfg.strategy_a, cfg.strategy_b, seed_of(cfg), opts);
    const std::string record = to_record(out);
    std::cout << record << "\n";
    std::cout << "verdict " << int{out.verdict} << "\n";
    if (out.forfeit) std::cout << "forfeit " << to_string(out.forfeit->party) << ": " << out.forfeit->reason << "\n";
    std::string body = record + "\n";
    if (cfg.trace) {
        std::cout << to_trace(out);
        body += to_trace(out);
    }
    write_text(cfg.out_dir, "run-debate.txt", body);
    const Interval point{double(out.verdict), double(out.verdict)};
    return meets(lc, point) ? kOk : kFailed;
}

int cmd_experiment(const Flags& f)
{
    const LoadedConfig lc = load(f);
    const ExperimentConfig& cfg = lc.experiment;
    const std::uint64_t seed = seed_of(cfg);
    const AcceptanceEstimate e = estimate_acceptance(cfg);
    print(e);
    write_report(cfg.out_dir, "experiment", estimates_csv({e}), estimate_json(e, "experiment", seed));
    if (cfg.trace) write_text(cfg.out_dir, "experiment.trace.txt", trace_of(cfg, cfg.strategy_a, cfg.strategy_b, seed));
    const int status = errors_status(e);
    return meets(lc, e.ci) ? status : kFailed;
}

int cmd_sweep(const Flags& f)
{
    const LoadedConfig lc = load(f);
    const ExperimentConfig& cfg = lc.experiment;
    if (cfg.family.empty()) throw UsageError("sweep needs at least one 'family' entry");
    const std::uint64_t seed = seed_of(cfg);
    const SweepResult r = adversary_sweep(cfg);
    std::vector<AcceptanceEstimate> rows;
    int status = kOk;
    std::string traces;
    for (const SweepRow& row : r.rows) {
        print(row.estimate);
        rows.push_back(row.estimate);
        status = std::max(status, errors_status(row.estimate));
        if (cfg.trace) {
            const bool a_side = r.side == Party::A;
            traces += trace_of(cfg, a_side ? row.adversary : cfg.strategy_a, a_side ? cfg.strategy_b : row.adversary,
                               seed);
        }
    }
    write_report(cfg.out_dir, "sweep", estimates_csv(rows), sweep_json(r, seed));
    if (cfg.trace) write_text(cfg.out_dir, "sweep.trace.txt", traces);
    if (!r.extreme) return status;
    const AcceptanceEstimate& x = r.rows[*r.extreme].estimate;
    std::cout << (r.objective == Objective::Max ? "max" : "min") << " over family: " << x.label << " " << x.estimate
              << " ci=[" << x.ci.lo << ", " << x.ci.hi << "]\n";
    return meets(lc, x.ci) ? status : kFailed;
}

int cmd_matrix(const Flags& f)
{
    const LoadedConfig lc = load(f);
    const ExperimentConfig& cfg = lc.experiment;
    if (cfg.matrix_a.empty() || cfg.matrix_b.empty()) throw UsageError("matrix needs 'matrix_a' and 'matrix_b' entries");
    const std::uint64_t seed = seed_of(cfg);
    const PayoffMatrix m = payoff_matrix(cfg);
    int status = kOk;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        for (std::size_t j = 0; j < m.cols.size(); ++j) {
            print(m.cells[i][j]);
            status = std::max(status, errors_status(m.cells[i][j]));
        }
        std::cout << "best response of B to " << m.rows[i].str() << ": " << m.cols[m.best_response_b[i]].str() << "\n";
    }
    write_report(cfg.out_dir, "matrix", matrix_csv(m), matrix_json(m, seed));
    return status;
}

int cmd_lipschitz(const Flags& f)
{
    const LoadedConfig lc = load(f);
    const Subject& s = lc.experiment.subject;
    if (!s.program) throw UsageError("lipschitz needs a 'program'");
    const UnitRational delta = UnitRational::parse(lc.delta);
    const double k = estimate_lipschitz(*s.program, s.x, s.oracle, delta);
    const auto& declared = s.program->lipschitz();
    std::cout << s.program->name() << ": estimated K=" << k;
    if (declared) std::cout << " declared K=" << *declared;
    std::cout << "\n";
    const std::string csv = "program,delta,estimate,declared\n" + s.program->name() + "," + lc.delta + "," +
                            std::to_string(k) + "," + (declared ? std::to_string(*declared) : "") + "\n";
    const std::string json = lipschitz_json(s.program->name(), lc.delta, k, declared);
    write_report(lc.experiment.out_dir, "lipschitz", csv, json);
    if (declared && k > *declared + 1e-9) {
        std::cout << "estimate exceeds the declared constant\n";
        return kFailed;
    }
    return kOk;
}

int cmd_check_exhaustive(const Flags& f)
{
    ExhaustiveOptions opts;
    if (f.fault == "skip-final-check") {
        opts.fault = VerifierFault::SkipFinalCheck;
    } else if (f.fault != "none") {
        throw UsageError("unknown fault '" + f.fault + "'");
    }
    std::string out_dir = f.out.value_or(".");
    if (!f.config.empty()) out_dir = f.out.value_or(load(f).experiment.out_dir);
    const ExhaustiveReport r = exhaustive_soundness_check(exhaustive_machine_set(), exhaustive_program_set(), opts);
    std::cout << "machines=" << r.machines << " programs=" << r.programs << " cases=" << r.cases << " runs=" << r.runs
              << "\naccepted_in=" << r.accepted_in << "/" << r.runs_in << " accepted_out=" << r.accepted_out << "/"
              << r.runs_out << " budget_violations=" << r.budget_violations
              << " counterexamples=" << r.counterexample_count << "\n";
    for (const Counterexample& c : r.counterexamples) {
        std::cout << "counterexample: " << c.subject << " x=" << bits_to_string(c.x) << " A=" << c.a.str()
                  << " B=" << c.b.str() << " expected=" << int{c.expected} << " (" << c.problem << ")\n";
        if (f.trace) std::cout << to_record(c.outcome) << "\n" << to_trace(c.outcome);
    }
    write_report(out_dir, "exhaustive", exhaustive_csv(r), exhaustive_json(r));
    return r.ok() ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Debate protocol simulator"};
    app.require_subcommand(1);
    Flags flags;

    const auto common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", flags.config, "experiment config file");
        if (config_required) c->required();
        sub->add_option("--seed", flags.seed, "master seed");
        sub->add_option("--trials", flags.trials, "trials per estimate");
        sub->add_option("--mode", flags.mode, "parameter preset")->check(CLI::IsMember({"paper", "scaled"}));
        sub->add_option("--out", flags.out, "output directory");
        sub->add_flag("--trace", flags.trace, "emit message logs");
    };

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Flags&);
    };
    const Command commands[] = {
        {"run-debate", "run one debate and print its record", cmd_run_debate},
        {"experiment", "estimate acceptance for the configured strategies", cmd_experiment},
        {"sweep", "estimate acceptance across an adversary family", cmd_sweep},
        {"matrix", "payoff matrix over matrix_a x matrix_b", cmd_matrix},
        {"lipschitz", "estimate the Lipschitz constant of the configured program", cmd_lipschitz},
        {"check-exhaustive", "exhaustive soundness check over the stock machine set", cmd_check_exhaustive},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        common(sub, std::string(c.name) != "check-exhaustive");
        if (std::string(c.name) == "check-exhaustive") {
            sub->add_option("--fault", flags.fault, "verifier fault to inject (self-test)")
                ->check(CLI::IsMember({"none", "skip-final-check"}));
        }
        subs.emplace_back(sub, &c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        for (const auto& [sub, cmd] : subs) {
            if (sub->parsed()) return cmd->run(flags);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
