#include "debate/config.hpp"

#include <filesystem>
#include <map>
#include <sstream>

#include "debate/error.hpp"
#include "debate/machine_io.hpp"

namespace debate {

namespace {

struct Entry {
    std::size_t line = 0;
    std::string value;
};

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

const std::map<std::string, bool> kKeys = {
    // key -> repeatable
    {"protocol", false},  {"machine", false},       {"program", false},       {"oracle", false},
    {"input", false},     {"witness_length", false}, {"A", false},             {"B", false},
    {"family", true},     {"family_side", false},    {"matrix_a", true},       {"matrix_b", true},
    {"trials", false},    {"seed", false},           {"threads", false},       {"mode", false},
    {"c_d", false},       {"chernoff_coeff", false}, {"verifier_conf", false}, {"prover_conf_base", false},
    {"r", false},         {"R", false},              {"sampling", false},      {"delta", false},
    {"out", false},       {"trace", false},          {"expect_min", false},    {"expect_max", false},
};

[[noreturn]] void fail(std::size_t line, const std::string& why)
{
    throw Error(ErrorCode::ParseError, "config line " + std::to_string(line) + ": " + why);
}

std::uint64_t to_u64(const Entry& e)
{
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(e.value, &used);
        if (used != e.value.size() || e.value.front() == '-') fail(e.line, "expected an unsigned integer");
        return v;
    } catch (const std::logic_error&) {
        fail(e.line, "expected an unsigned integer, got '" + e.value + "'");
    }
}

double to_double(const Entry& e)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size()) fail(e.line, "expected a number");
        return v;
    } catch (const std::logic_error&) {
        fail(e.line, "expected a number, got '" + e.value + "'");
    }
}

template <typename F>
auto at_line(const Entry& e, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& err) {
        fail(e.line, err.what());
    }
}

std::string resolve_path(const std::string& ref, const std::string& base_dir)
{
    if (ref.rfind("catalogue:", 0) == 0 || ref.rfind("constant ", 0) == 0 || ref.rfind("table ", 0) == 0) return ref;
    const std::filesystem::path p(ref);
    if (p.is_absolute() || base_dir.empty()) return ref;
    return (std::filesystem::path(base_dir) / p).string();
}

} // namespace

LoadedConfig parse_config(std::string_view text, const std::string& base_dir, const ConfigOverrides& overrides)
{
    std::map<std::string, std::vector<Entry>> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        if (const auto hash = raw.find('#'); hash != std::string::npos && raw.find_first_not_of(" \t") == hash) continue;
        if (trim(raw).empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(raw.substr(0, eq));
        const std::string value = trim(raw.substr(eq + 1));
        const auto known = kKeys.find(key);
        if (known == kKeys.end()) fail(line, "unknown key '" + key + "'");
        auto& slot = entries[key];
        if (!slot.empty() && !known->second) fail(line, "key '" + key + "' given twice");
        slot.push_back({line, value});
    }
    const auto one = [&](const std::string& key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second.front();
    };

    LoadedConfig out;
    ExperimentConfig& cfg = out.experiment;
    Subject& s = cfg.subject;

    const Entry* protocol = one("protocol");
    if (!protocol) throw Error(ErrorCode::ParseError, "config: protocol is required");
    s.protocol = at_line(*protocol, [&] { return parse_protocol(protocol->value); });

    if (const Entry* e = one("machine")) s.machine = at_line(*e, [&] { return load_machine(resolve_path(e->value, base_dir)); });
    if (const Entry* e = one("program")) s.program = at_line(*e, [&] { return load_program(resolve_path(e->value, base_dir)); });
    if (const Entry* e = one("oracle")) s.oracle = at_line(*e, [&] { return load_oracle(resolve_path(e->value, base_dir)); });
    if (const Entry* e = one("input")) s.x = at_line(*e, [&] { return parse_bits(e->value); });
    if (const Entry* e = one("witness_length")) s.witness_length = static_cast<std::uint32_t>(to_u64(*e));

    if (s.protocol == ProtocolId::Bisection && !s.machine) {
        throw Error(ErrorCode::ParseError, "config: bisection needs 'machine'");
    }
    if (s.protocol != ProtocolId::Bisection && !s.program && !(s.protocol == ProtocolId::CrossExam && s.machine)) {
        throw Error(ErrorCode::ParseError, "config: " + to_string(s.protocol) + " needs 'program'");
    }

    if (const Entry* e = one("A")) cfg.strategy_a = at_line(*e, [&] { return AdversarySpec::parse(e->value); });
    if (const Entry* e = one("B")) cfg.strategy_b = at_line(*e, [&] { return AdversarySpec::parse(e->value); });
    for (const auto& [key, list] : {std::pair{"family", &cfg.family}, std::pair{"matrix_a", &cfg.matrix_a},
                                    std::pair{"matrix_b", &cfg.matrix_b}}) {
        if (!entries.count(key)) continue;
        for (const Entry& e : entries[key]) list->push_back(at_line(e, [&] { return AdversarySpec::parse(e.value); }));
    }
    for (const auto& [key, spec] : {std::pair{"A", &cfg.strategy_a}, std::pair{"B", &cfg.strategy_b}}) {
        const Entry* e = one(key);
        if (e) {
            at_line(*e, [&] { return make_adversary(*spec); });
        } else {
            (void)make_adversary(*spec);
        }
    }
    if (const Entry* e = one("family_side")) {
        if (e->value != "A" && e->value != "B") fail(e->line, "family_side must be A or B");
        cfg.family_side = e->value == "A" ? Party::A : Party::B;
    }

    if (const Entry* e = one("trials")) cfg.trials = to_u64(*e);
    if (const Entry* e = one("seed")) cfg.seed = to_u64(*e);
    if (const Entry* e = one("threads")) cfg.threads = static_cast<unsigned>(to_u64(*e));
    if (const Entry* e = one("out")) cfg.out_dir = resolve_path(e->value, base_dir);
    if (const Entry* e = one("trace")) {
        if (e->value != "true" && e->value != "false") fail(e->line, "trace must be true or false");
        cfg.trace = e->value == "true";
    }
    if (const Entry* e = one("delta")) {
        at_line(*e, [&] { return UnitRational::parse(e->value); });
        out.delta = e->value;
    }

    for (const auto& [key, slot] : {std::pair{"expect_min", &out.expect_min}, std::pair{"expect_max", &out.expect_max}}) {
        if (const Entry* e = one(key)) *slot = at_line(*e, [&] { return UnitRational::parse(e->value); });
    }

    ParamMode mode = ParamMode::Paper;
    if (const Entry* e = one("mode")) mode = at_line(*e, [&] { return parse_param_mode(e->value); });
    if (overrides.mode) mode = *overrides.mode;
    ProtocolParams& p = s.params;
    p = mode == ParamMode::Paper ? ProtocolParams::paper() : ProtocolParams::scaled();
    if (const Entry* e = one("c_d")) p.c_d = to_u64(*e);
    if (const Entry* e = one("chernoff_coeff")) p.chernoff_coeff = to_u64(*e);
    if (const Entry* e = one("verifier_conf")) p.verifier_conf = to_double(*e);
    if (const Entry* e = one("prover_conf_base")) p.prover_conf_base = to_double(*e);
    if (const Entry* e = one("r")) p.r_override = to_u64(*e);
    if (const Entry* e = one("R")) p.R_override = to_u64(*e);
    if (const Entry* e = one("sampling")) {
        if (e->value != "binomial" && e->value != "naive") fail(e->line, "sampling must be binomial or naive");
        p.sampling = e->value == "binomial" ? SamplingMode::Binomial : SamplingMode::Naive;
    }
    p.validate();

    if (overrides.seed) cfg.seed = overrides.seed;
    if (overrides.trials) cfg.trials = *overrides.trials;
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    if (overrides.trace) cfg.trace = true;
    if (cfg.trials == 0) throw Error(ErrorCode::ParseError, "config: trials must be at least 1");
    return out;
}

LoadedConfig load_config(const std::string& path, const ConfigOverrides& overrides)
{
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_config(read_file(path), dir, overrides);
}

} // namespace debate
