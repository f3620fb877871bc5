#include "debate/machine_io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "debate/builder.hpp"
#include "debate/catalogue.hpp"
#include "debate/error.hpp"

namespace debate {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        // '#' opens a comment unless it is a constant ref such as "#1" inside a line.
        for (std::size_t pos = 0; pos < raw.size(); ++pos) {
            if (raw[pos] != '#') continue;
            const bool ref = pos > 0 && std::isspace(static_cast<unsigned char>(raw[pos - 1])) && pos + 1 < raw.size() &&
                             std::isdigit(static_cast<unsigned char>(raw[pos + 1]));
            if (!ref) {
                raw.erase(pos);
                break;
            }
        }
        std::istringstream words(raw);
        Line line{number, {}};
        for (std::string w; words >> w;) line.words.push_back(w);
        if (!line.words.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& why)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line.number) + ": " + why);
}

std::uint32_t number(const Line& line, const std::string& text)
{
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(text, &used);
        if (used != text.size() || v > 0xFFFFFFFFul) fail(line, "bad number '" + text + "'");
        return static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
        fail(line, "bad number '" + text + "'");
    }
}

UnitRational probability(const Line& line, const std::string& text)
{
    try {
        return UnitRational::parse(text);
    } catch (const Error& e) {
        fail(line, e.what());
    }
}

CellRef parse_ref(const Line& line, const std::string& w)
{
    if (w.size() < 2) fail(line, "bad reference '" + w + "'");
    const std::uint32_t n = number(line, w.substr(1));
    switch (w[0]) {
    case 'x': return CellRef::input(n);
    case 'c': return CellRef::cell(n);
    case '#': return CellRef::constant(n);
    default: fail(line, "bad reference '" + w + "'");
    }
}

} // namespace

ConfigurationMachine parse_machine(std::string_view text)
{
    MachineSpec spec;
    std::vector<std::pair<Line, std::array<std::uint32_t, 4>>> rows;
    std::vector<Move> moves;
    for (const Line& line : tokenize(text)) {
        const auto& w = line.words;
        const std::string& key = w[0];
        if (key == "name" && w.size() == 2) {
            spec.name = w[1];
        } else if (w.size() == 2 && (key == "states" || key == "start" || key == "halt" || key == "space" ||
                                     key == "time" || key == "input")) {
            const std::uint32_t v = number(line, w[1]);
            if (key == "states") spec.num_states = v;
            if (key == "start") spec.start_state = v;
            if (key == "halt") spec.halt_state = v;
            if (key == "space") spec.space = v;
            if (key == "time") spec.time = v;
            if (key == "input") spec.input_length = v;
        } else if (key == "query") {
            std::map<std::string, std::uint32_t> kv;
            for (std::size_t i = 1; i < w.size(); ++i) {
                const auto eq = w[i].find('=');
                if (eq == std::string::npos) fail(line, "query fields are key=value");
                kv[w[i].substr(0, eq)] = number(line, w[i].substr(eq + 1));
            }
            for (const char* k : {"state", "return", "offset", "length", "answer"}) {
                if (!kv.count(k)) fail(line, std::string("query needs ") + k);
            }
            spec.query = QueryConvention{kv["state"], kv["return"], kv["offset"], kv["length"], kv["answer"]};
        } else if (w.size() == 6 && w[2] == "->") {
            const std::string& mv = w[5];
            Move move = Move::Stay;
            if (mv == "L") {
                move = Move::Left;
            } else if (mv == "R") {
                move = Move::Right;
            } else if (mv != "S") {
                fail(line, "move must be L, S or R");
            }
            rows.push_back({line, {number(line, w[0]), number(line, w[1]), number(line, w[3]), number(line, w[4])}});
            moves.push_back(move);
        } else {
            fail(line, "unrecognised directive '" + key + "'");
        }
    }
    spec.transitions.assign(std::size_t{spec.num_states} * 2, std::nullopt);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [line, v] = rows[i];
        if (v[0] >= spec.num_states || v[1] > 1) fail(line, "transition source out of range");
        auto& slot = spec.transitions[std::size_t{v[0]} * 2 + v[1]];
        if (slot) fail(line, "duplicate transition");
        slot = Transition{v[2], static_cast<std::uint8_t>(v[3]), moves[i]};
    }
    return ConfigurationMachine(std::move(spec));
}

StepProgram parse_program(std::string_view text)
{
    std::string name = "program";
    std::uint32_t input = 0;
    std::uint32_t query_length = 0;
    std::optional<double> lipschitz;
    std::vector<Line> steps;
    for (const Line& line : tokenize(text)) {
        const auto& w = line.words;
        if (w[0] == "name" && w.size() == 2) {
            name = w[1];
        } else if (w[0] == "input" && w.size() == 2) {
            input = number(line, w[1]);
        } else if (w[0] == "query_length" && w.size() == 2) {
            query_length = number(line, w[1]);
        } else if (w[0] == "lipschitz" && w.size() == 2) {
            try {
                lipschitz = std::stod(w[1]);
            } catch (const std::logic_error&) {
                fail(line, "bad Lipschitz constant");
            }
        } else if (w[0] == "step" && w.size() >= 2) {
            steps.push_back(line);
        } else {
            fail(line, "unrecognised directive '" + w[0] + "'");
        }
    }
    ProgramBuilder b(name, input, query_length);
    for (const Line& line : steps) {
        const auto& w = line.words;
        const std::string& op = w[1];
        try {
            if (op == "const") {
                if (w.size() != 3 || (w[2] != "0" && w[2] != "1")) fail(line, "const takes 0 or 1");
                const Cell v = w[2] == "1";
                b.det({}, [v](std::span<const Cell>) { return v; }, "const");
                continue;
            }
            std::size_t first = 2;
            std::vector<std::uint8_t> truth;
            if (op == "table") {
                if (w.size() < 3) fail(line, "table needs a truth string");
                for (char c : w[2]) {
                    if (c != '0' && c != '1') fail(line, "truth table must be a bit string");
                    truth.push_back(static_cast<std::uint8_t>(c - '0'));
                }
                first = 3;
            }
            std::vector<CellRef> reads;
            for (std::size_t i = first; i < w.size(); ++i) reads.push_back(parse_ref(line, w[i]));
            if (op == "query") {
                b.query(std::move(reads));
            } else if (op == "table") {
                b.table(std::move(reads), std::move(truth));
            } else {
                b.gate(parse_gate(op), std::move(reads));
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError && std::string(e.what()).find("line ") != std::string::npos) throw;
            fail(line, e.what());
        }
    }
    return std::move(b).build(lipschitz);
}

StochasticOracle parse_oracle(std::string_view text)
{
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty oracle description");
    if (lines.front().words[0] == "constant") {
        const Line& line = lines.front();
        if (lines.size() != 1 || line.words.size() != 3) fail(line, "constant oracle is 'constant <l> <p>'");
        return StochasticOracle::constant(number(line, line.words[1]), probability(line, line.words[2]));
    }
    if (lines.front().words[0] == "table") {
        const Line& line = lines.front();
        if (lines.size() != 1 || line.words.size() < 3) fail(line, "inline table is 'table <l> p0 p1 ...'");
        std::vector<UnitRational> probs;
        for (std::size_t i = 2; i < line.words.size(); ++i) probs.push_back(probability(line, line.words[i]));
        return StochasticOracle::table(number(line, line.words[1]), std::move(probs));
    }
    const std::size_t l = lines.front().words[0].size();
    if (l > StochasticOracle::max_table_length) fail(lines.front(), "tables are limited to l <= 20");
    std::vector<std::optional<UnitRational>> probs(std::size_t{1} << l);
    for (const Line& line : lines) {
        if (line.words.size() != 2) fail(line, "expected 'bitstring probability'");
        if (line.words[0].size() != l) fail(line, "query length differs from the first line");
        Bits bits;
        try {
            bits = parse_bits(line.words[0]);
        } catch (const Error& e) {
            fail(line, e.what());
        }
        auto& slot = probs[bits_to_index(bits)];
        if (slot) fail(line, "duplicate query " + line.words[0]);
        slot = probability(line, line.words[1]);
    }
    std::vector<UnitRational> table;
    for (std::size_t z = 0; z < probs.size(); ++z) {
        if (!probs[z]) {
            throw Error(ErrorCode::ParseError, "oracle table misses query " + bits_to_string(index_to_bits(z, static_cast<std::uint32_t>(l))));
        }
        table.push_back(*probs[z]);
    }
    return StochasticOracle::table(static_cast<std::uint32_t>(l), std::move(table));
}

std::string format_machine(const ConfigurationMachine& m)
{
    std::ostringstream os;
    os << "name " << m.name() << "\nstates " << m.num_states() << "\nstart " << m.start_state() << "\nhalt "
       << m.halt_state() << "\nspace " << m.space() << "\ntime " << m.time() << "\ninput " << m.input_length() << "\n";
    if (const auto& q = m.query()) {
        os << "query state=" << q->query_state << " return=" << q->return_state << " offset=" << q->window_offset
           << " length=" << q->window_length << " answer=" << q->answer_cell << "\n";
    }
    const auto& table = m.spec().transitions;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i]) continue;
        const char move = table[i]->move == Move::Left ? 'L' : table[i]->move == Move::Right ? 'R' : 'S';
        os << i / 2 << ' ' << i % 2 << " -> " << table[i]->next << ' ' << int{table[i]->write} << ' ' << move << "\n";
    }
    return os.str();
}

std::string format_oracle(const StochasticOracle& o)
{
    if (!o.tabulated()) return "constant " + std::to_string(o.query_length()) + " " + o.probability(0).str() + "\n";
    std::string out;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << o.query_length()); ++z) {
        out += bits_to_string(index_to_bits(z, o.query_length())) + " " + o.probability(z).str() + "\n";
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

constexpr std::string_view kCatalogue = "catalogue:";

bool is_catalogue(const std::string& ref)
{
    return ref.rfind(kCatalogue, 0) == 0;
}

} // namespace

ConfigurationMachine load_machine(const std::string& ref)
{
    if (!is_catalogue(ref)) return parse_machine(read_file(ref));
    const std::string name = ref.substr(kCatalogue.size());
    for (MachineCase& c : stock_machines()) {
        if (c.machine.name() == name) return std::move(c.machine);
    }
    throw Error(ErrorCode::BadParameter, "no catalogue machine named '" + name + "'");
}

StepProgram load_program(const std::string& ref)
{
    if (!is_catalogue(ref)) return parse_program(read_file(ref));
    const std::string name = ref.substr(kCatalogue.size());
    if (name == "constant0") return constant_program(0);
    if (name == "constant1") return constant_program(1);
    if (name == "single_query") return single_query_program();
    if (name == "single_query_copy") return single_query_copy_program();
    if (name == "majority3") return majority3_program();
    if (name == "subset_sum") return subset_sum_verifier({3, 5, 6, 9}, 5);
    throw Error(ErrorCode::BadParameter, "no catalogue program named '" + name + "'");
}

StochasticOracle load_oracle(const std::string& ref)
{
    if (ref.rfind("constant ", 0) == 0 || ref.rfind("table ", 0) == 0) return parse_oracle(ref);
    if (is_catalogue(ref)) {
        const std::string name = ref.substr(kCatalogue.size());
        if (name == "negate") return StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});
        if (name == "identity") return StochasticOracle::table(1, {UnitRational::zero(), UnitRational::one()});
        if (name == "none") return StochasticOracle::constant(0, UnitRational::zero());
        throw Error(ErrorCode::BadParameter, "no catalogue oracle named '" + name + "'");
    }
    return parse_oracle(read_file(ref));
}

} // namespace debate
