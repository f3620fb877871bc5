#include "debate/builder.hpp"

#include "debate/error.hpp"

namespace debate {

Gate parse_gate(const std::string& name)
{
    if (name == "copy") return Gate::Copy;
    if (name == "not") return Gate::Not;
    if (name == "and") return Gate::And;
    if (name == "or") return Gate::Or;
    if (name == "xor") return Gate::Xor;
    if (name == "xnor") return Gate::Xnor;
    if (name == "maj") return Gate::Maj;
    if (name == "table") return Gate::Table;
    throw Error(ErrorCode::ParseError, "unknown gate '" + name + "'");
}

std::string to_string(Gate g)
{
    switch (g) {
    case Gate::Copy: return "copy";
    case Gate::Not: return "not";
    case Gate::And: return "and";
    case Gate::Or: return "or";
    case Gate::Xor: return "xor";
    case Gate::Xnor: return "xnor";
    case Gate::Maj: return "maj";
    case Gate::Table: return "table";
    }
    return "?";
}

DetFunction gate_function(Gate g, std::size_t arity, std::vector<std::uint8_t> table)
{
    const auto need = [&](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::MalformedProgram, std::string("gate ") + to_string(g) + ": " + what);
    };
    switch (g) {
    case Gate::Copy:
        need(arity == 1, "takes one input");
        return [](std::span<const Cell> v) -> Cell { return v[0] & 1u; };
    case Gate::Not:
        need(arity == 1, "takes one input");
        return [](std::span<const Cell> v) -> Cell { return ~v[0] & 1u; };
    case Gate::And:
        return [](std::span<const Cell> v) -> Cell {
            Cell r = 1;
            for (Cell c : v) r &= c;
            return r & 1u;
        };
    case Gate::Or:
        return [](std::span<const Cell> v) -> Cell {
            Cell r = 0;
            for (Cell c : v) r |= c;
            return r & 1u;
        };
    case Gate::Xor:
        return [](std::span<const Cell> v) -> Cell {
            Cell r = 0;
            for (Cell c : v) r ^= c;
            return r & 1u;
        };
    case Gate::Xnor:
        return [](std::span<const Cell> v) -> Cell {
            Cell r = 1;
            for (Cell c : v) r ^= c;
            return r & 1u;
        };
    case Gate::Maj:
        need(arity % 2 == 1, "needs an odd number of inputs");
        return [](std::span<const Cell> v) -> Cell {
            std::size_t ones = 0;
            for (Cell c : v) ones += c & 1u;
            return 2 * ones > v.size() ? 1 : 0;
        };
    case Gate::Table:
        need(arity < 20 && table.size() == (std::size_t{1} << arity), "truth table must have 2^arity entries");
        for (std::uint8_t b : table) need(b <= 1, "truth table entries are bits");
        return [table = std::move(table)](std::span<const Cell> v) -> Cell {
            std::size_t idx = 0;
            for (Cell c : v) idx = (idx << 1) | (c & 1u);
            return table[idx];
        };
    }
    throw Error(ErrorCode::MalformedProgram, "unknown gate");
}

ProgramBuilder::ProgramBuilder(std::string name, std::uint32_t input_length, std::uint32_t query_length)
{
    spec_.name = std::move(name);
    spec_.input_length = input_length;
    spec_.query_length = query_length;
    spec_.width = 1;
}

CellRef ProgramBuilder::gate(Gate g, std::vector<CellRef> reads, std::string label)
{
    DetFunction fn = gate_function(g, reads.size());
    return det(std::move(reads), std::move(fn), label.empty() ? to_string(g) : std::move(label));
}

CellRef ProgramBuilder::table(std::vector<CellRef> reads, std::vector<std::uint8_t> truth, std::string label)
{
    DetFunction fn = gate_function(Gate::Table, reads.size(), std::move(truth));
    return det(std::move(reads), std::move(fn), label.empty() ? "table" : std::move(label));
}

CellRef ProgramBuilder::det(std::vector<CellRef> reads, DetFunction fn, std::string label)
{
    spec_.steps.push_back(Step{StepKind::Det, std::move(reads), std::move(fn), std::move(label)});
    return CellRef::cell(size());
}

CellRef ProgramBuilder::query(std::vector<CellRef> reads, std::string label)
{
    spec_.steps.push_back(Step{StepKind::Query, std::move(reads), {}, label.empty() ? "query" : std::move(label)});
    return CellRef::cell(size());
}

std::pair<CellRef, CellRef> ProgramBuilder::full_adder(CellRef a, CellRef b, CellRef c)
{
    const CellRef sum = gate(Gate::Xor, {a, b, c}, "sum");
    const CellRef carry = gate(Gate::Maj, {a, b, c}, "carry");
    return {sum, carry};
}

StepProgram ProgramBuilder::build(std::optional<double> lipschitz) &&
{
    spec_.lipschitz = lipschitz;
    return StepProgram(std::move(spec_));
}

} // namespace debate
