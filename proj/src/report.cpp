#include "debate/report.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "debate/error.hpp"

namespace debate {

namespace {

using nlohmann::ordered_json;

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string num(double v)
{
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

const char* kHeader =
    "label,requested,trials,successes,estimate,ci_lo,ci_hi,forfeits_a,forfeits_b,aborts,errors,"
    "mean_verifier_oracle_queries,mean_verifier_bits_read,mean_verifier_configurations_read,"
    "mean_proverA_steps,mean_proverB_steps,mean_proverA_oracle_samples,mean_proverB_oracle_samples,"
    "max_verifier_oracle_queries,max_verifier_bits_read";

std::string row(const AcceptanceEstimate& e)
{
    std::ostringstream os;
    const CounterMeans& m = e.means;
    os << quote(e.label) << ',' << e.requested << ',' << e.trials << ',' << e.successes << ',' << num(e.estimate) << ','
       << num(e.ci.lo) << ',' << num(e.ci.hi) << ',' << e.forfeits_a << ',' << e.forfeits_b << ',' << e.aborts << ','
       << e.errors << ',' << num(m.verifier_oracle_queries) << ',' << num(m.verifier_bits_read) << ','
       << num(m.verifier_configurations_read) << ',' << num(m.proverA_steps) << ',' << num(m.proverB_steps) << ','
       << num(m.proverA_oracle_samples) << ',' << num(m.proverB_oracle_samples) << ',' << e.max_verifier_oracle_queries
       << ',' << e.max_verifier_bits_read;
    return os.str();
}

ordered_json to_json(const AcceptanceEstimate& e)
{
    const CounterMeans& m = e.means;
    ordered_json j;
    j["label"] = e.label;
    j["requested"] = e.requested;
    j["trials"] = e.trials;
    j["successes"] = e.successes;
    j["estimate"] = e.estimate;
    j["ci_lo"] = e.ci.lo;
    j["ci_hi"] = e.ci.hi;
    j["forfeits_a"] = e.forfeits_a;
    j["forfeits_b"] = e.forfeits_b;
    j["aborts"] = e.aborts;
    j["errors"] = e.errors;
    if (!e.first_error.empty()) j["first_error"] = e.first_error;
    j["means"] = {{"verifier_oracle_queries", m.verifier_oracle_queries},
                  {"verifier_bits_read", m.verifier_bits_read},
                  {"verifier_configurations_read", m.verifier_configurations_read},
                  {"proverA_steps", m.proverA_steps},
                  {"proverB_steps", m.proverB_steps},
                  {"proverA_oracle_samples", m.proverA_oracle_samples},
                  {"proverB_oracle_samples", m.proverB_oracle_samples}};
    j["max_verifier_oracle_queries"] = e.max_verifier_oracle_queries;
    j["max_verifier_bits_read"] = e.max_verifier_bits_read;
    return j;
}

ordered_json outcome_json(const DebateOutcome& o)
{
    ordered_json j;
    j["record"] = to_record(o);
    j["trace"] = ordered_json::array();
    for (const LogEntry& e : o.log) j["trace"].push_back({{"round", e.round}, {"actor", e.actor}, {"text", e.text}});
    return j;
}

} // namespace

std::string estimates_csv(const std::vector<AcceptanceEstimate>& rows)
{
    std::string out = std::string(kHeader) + "\n";
    for (const AcceptanceEstimate& e : rows) out += row(e) + "\n";
    return out;
}

std::string matrix_csv(const PayoffMatrix& m)
{
    std::string out = std::string("row,col,row_strategy,col_strategy,") + kHeader + ",best_response_b,best_response_a\n";
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        for (std::size_t j = 0; j < m.cols.size(); ++j) {
            out += std::to_string(i) + "," + std::to_string(j) + "," + quote(m.rows[i].str()) + "," +
                   quote(m.cols[j].str()) + "," + row(m.cells[i][j]) + "," + (m.best_response_b[i] == j ? "1" : "0") +
                   "," + (m.best_response_a[j] == i ? "1" : "0") + "\n";
        }
    }
    return out;
}

std::string estimate_json(const AcceptanceEstimate& e, const std::string& command, std::uint64_t seed)
{
    ordered_json j;
    j["command"] = command;
    j["seed"] = seed;
    j["result"] = to_json(e);
    return j.dump(2) + "\n";
}

std::string sweep_json(const SweepResult& s, std::uint64_t seed)
{
    ordered_json j;
    j["command"] = "sweep";
    j["seed"] = seed;
    j["side"] = to_string(s.side);
    j["objective"] = s.objective == Objective::Max ? "max" : "min";
    j["rows"] = ordered_json::array();
    for (const SweepRow& r : s.rows) {
        ordered_json row = to_json(r.estimate);
        row["adversary"] = r.adversary.str();
        j["rows"].push_back(row);
    }
    if (s.extreme) {
        j["extreme"] = {{"adversary", s.rows[*s.extreme].adversary.str()},
                        {"estimate", s.rows[*s.extreme].estimate.estimate},
                        {"ci_lo", s.rows[*s.extreme].estimate.ci.lo},
                        {"ci_hi", s.rows[*s.extreme].estimate.ci.hi}};
    } else {
        j["extreme"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string matrix_json(const PayoffMatrix& m, std::uint64_t seed)
{
    ordered_json j;
    j["command"] = "matrix";
    j["seed"] = seed;
    j["rows"] = ordered_json::array();
    for (const auto& r : m.rows) j["rows"].push_back(r.str());
    j["cols"] = ordered_json::array();
    for (const auto& c : m.cols) j["cols"].push_back(c.str());
    j["payoff_a"] = ordered_json::array();
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        ordered_json line = ordered_json::array();
        for (std::size_t jj = 0; jj < m.cols.size(); ++jj) line.push_back(to_json(m.cells[i][jj]));
        j["payoff_a"].push_back(line);
    }
    j["best_response_b"] = m.best_response_b;
    j["best_response_a"] = m.best_response_a;
    return j.dump(2) + "\n";
}

std::string exhaustive_json(const ExhaustiveReport& r)
{
    ordered_json j;
    j["command"] = "check-exhaustive";
    j["machines"] = r.machines;
    j["programs"] = r.programs;
    j["cases"] = r.cases;
    j["runs"] = r.runs;
    j["runs_in"] = r.runs_in;
    j["accepted_in"] = r.accepted_in;
    j["runs_out"] = r.runs_out;
    j["accepted_out"] = r.accepted_out;
    j["budget_violations"] = r.budget_violations;
    j["counterexample_count"] = r.counterexample_count;
    j["counterexamples"] = ordered_json::array();
    for (const Counterexample& c : r.counterexamples) {
        j["counterexamples"].push_back({{"subject", c.subject},
                                        {"input", bits_to_string(c.x)},
                                        {"A", c.a.str()},
                                        {"B", c.b.str()},
                                        {"expected", c.expected},
                                        {"problem", c.problem},
                                        {"seed", c.outcome.seed},
                                        {"outcome", outcome_json(c.outcome)}});
    }
    return j.dump(2) + "\n";
}

std::string lipschitz_json(const std::string& program, const std::string& delta, double estimate,
                           const std::optional<double>& declared)
{
    ordered_json j;
    j["command"] = "lipschitz";
    j["program"] = program;
    j["delta"] = delta;
    j["estimate"] = estimate;
    j["declared"] = declared ? ordered_json(*declared) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

std::string exhaustive_csv(const ExhaustiveReport& r)
{
    std::string out = "machines,programs,cases,runs,runs_in,accepted_in,runs_out,accepted_out,budget_violations,"
                      "counterexamples\n";
    out += std::to_string(r.machines) + "," + std::to_string(r.programs) + "," + std::to_string(r.cases) + "," +
           std::to_string(r.runs) + "," + std::to_string(r.runs_in) + "," + std::to_string(r.accepted_in) + "," +
           std::to_string(r.runs_out) + "," + std::to_string(r.accepted_out) + "," +
           std::to_string(r.budget_violations) + "," + std::to_string(r.counterexample_count) + "\n";
    return out;
}

void write_report(const std::string& dir, const std::string& stem, const std::string& csv, const std::string& json)
{
    std::filesystem::create_directories(dir);
    for (const auto& [ext, body] : {std::pair{".csv", &csv}, std::pair{".json", &json}}) {
        const std::filesystem::path path = std::filesystem::path(dir) / (stem + ext);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::BadParameter, "cannot write " + path.string());
        out << *body;
    }
}

} // namespace debate
