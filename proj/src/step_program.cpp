#include "debate/step_program.hpp"

#include <algorithm>

#include "debate/error.hpp"

namespace debate {

std::string CellRef::str() const
{
    switch (source) {
    case Source::Input: return "x" + std::to_string(index);
    case Source::Cell: return "c" + std::to_string(index);
    case Source::Constant: return "#" + std::to_string(index);
    }
    return "?";
}

StepProgram::StepProgram(ProgramSpec spec) : spec_(std::move(spec))
{
    const auto bad = [this](const std::string& why) {
        throw Error(ErrorCode::MalformedProgram, spec_.name + ": " + why);
    };
    if (spec_.steps.empty()) bad("program has no steps");
    if (spec_.width == 0 || spec_.width > 64) bad("cell width must be in [1, 64]");
    if (spec_.query_length > 64) bad("query length above 64");
    if (spec_.lipschitz && !(*spec_.lipschitz >= 0.0)) bad("Lipschitz constant must be non-negative");

    for (std::uint32_t t = 1; t <= length(); ++t) {
        const Step& s = spec_.steps[t - 1];
        const std::string where = "step " + std::to_string(t) + ": ";
        for (std::size_t i = 0; i < s.reads.size(); ++i) {
            const CellRef& r = s.reads[i];
            switch (r.source) {
            case CellRef::Source::Input:
                if (r.index >= spec_.input_length) bad(where + "input ref " + r.str() + " out of range");
                break;
            case CellRef::Source::Cell:
                if (r.index == 0 || r.index >= t) bad(where + "forward or zero read " + r.str());
                break;
            case CellRef::Source::Constant:
                if (r.index > 1) bad(where + "constant must be 0 or 1");
                break;
            }
            if (r.source != CellRef::Source::Constant &&
                std::find(s.reads.begin(), s.reads.begin() + static_cast<std::ptrdiff_t>(i), r) !=
                    s.reads.begin() + static_cast<std::ptrdiff_t>(i)) {
                bad(where + "duplicate read " + r.str());
            }
        }
        if (s.kind == StepKind::Det) {
            if (!s.fn) bad(where + "deterministic step without a function");
        } else {
            if (s.reads.size() != spec_.query_length) bad(where + "query reads must concatenate to l bits");
            ++num_query_steps_;
        }
        max_read_bits_ = std::max(max_read_bits_, read_bits(t));
    }
}

const Step& StepProgram::step(std::uint32_t t) const
{
    if (t == 0 || t > length()) throw Error(ErrorCode::BadParameter, name() + ": step index out of range");
    return spec_.steps[t - 1];
}

std::uint32_t StepProgram::read_bits(std::uint32_t t) const
{
    const Step& s = step(t);
    std::uint32_t bits = 0;
    for (const CellRef& r : s.reads) {
        if (r.source == CellRef::Source::Input) bits += 1;
        if (r.source == CellRef::Source::Cell) bits += s.kind == StepKind::Query ? 1 : spec_.width;
    }
    return bits;
}

Transcript Transcript::from_cells(std::span<const Cell> cells)
{
    Transcript tr(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) tr.cells_[i] = cells[i];
    return tr;
}

bool Transcript::assigned(std::uint32_t t) const
{
    return t >= 1 && t <= cells_.size() && cells_[t - 1].has_value();
}

Cell Transcript::at(std::uint32_t t) const
{
    if (!assigned(t)) throw Error(ErrorCode::UnassignedDependency, "cell " + std::to_string(t) + " is unassigned");
    return *cells_[t - 1];
}

void Transcript::assign(std::uint32_t t, Cell value)
{
    if (t == 0 || t > cells_.size()) throw Error(ErrorCode::BadParameter, "cell index out of range");
    if (cells_[t - 1]) throw Error(ErrorCode::AlreadyAssigned, "cell " + std::to_string(t) + " already assigned");
    cells_[t - 1] = value;
}

std::size_t Transcript::assigned_prefix() const
{
    std::size_t n = 0;
    while (n < cells_.size() && cells_[n]) ++n;
    return n;
}

std::vector<Cell> Transcript::values() const
{
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (std::uint32_t t = 1; t <= cells_.size(); ++t) out.push_back(at(t));
    return out;
}

std::string Transcript::to_hex(std::uint32_t width) const
{
    static constexpr char digits[] = "0123456789abcdef";
    const std::uint32_t per_cell = (width + 3) / 4;
    std::string out;
    out.reserve(per_cell * cells_.size());
    for (std::uint32_t t = 1; t <= cells_.size(); ++t) {
        const Cell v = at(t);
        for (std::uint32_t d = per_cell; d-- > 0;) out.push_back(digits[(v >> (4 * d)) & 0xF]);
    }
    return out;
}

Transcript Transcript::from_hex(std::string_view hex, std::uint32_t width)
{
    if (width == 0 || width > 64) throw Error(ErrorCode::ParseError, "bad cell width");
    const std::uint32_t per_cell = (width + 3) / 4;
    if (hex.size() % per_cell != 0) throw Error(ErrorCode::ParseError, "hex transcript length not a multiple of the cell size");
    const Cell mask = width >= 64 ? ~Cell{0} : ((Cell{1} << width) - 1);
    std::vector<Cell> cells;
    for (std::size_t pos = 0; pos < hex.size(); pos += per_cell) {
        Cell v = 0;
        for (std::uint32_t d = 0; d < per_cell; ++d) {
            const char c = hex[pos + d];
            int nibble = -1;
            if (c >= '0' && c <= '9') nibble = c - '0';
            if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
            if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
            if (nibble < 0) throw Error(ErrorCode::ParseError, "bad hex digit in transcript");
            v = (v << 4) | static_cast<Cell>(nibble);
        }
        if ((v & ~mask) != 0) throw Error(ErrorCode::ParseError, "hex cell wider than the cell width");
        cells.push_back(v);
    }
    return from_cells(cells);
}

namespace {

template <typename CellAt>
std::vector<Cell> gather(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x, CellAt&& cell_at)
{
    const Step& s = p.step(t);
    std::vector<Cell> values;
    values.reserve(s.reads.size());
    for (const CellRef& r : s.reads) {
        switch (r.source) {
        case CellRef::Source::Input:
            if (r.index >= x.size()) throw Error(ErrorCode::BadParameter, "input shorter than the program expects");
            values.push_back(x[r.index] & 1u);
            break;
        case CellRef::Source::Constant: values.push_back(r.index); break;
        case CellRef::Source::Cell: values.push_back(cell_at(r.index)); break;
        }
    }
    return values;
}

} // namespace

std::vector<Cell> gather_reads(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x,
                               std::span<const Cell> cells)
{
    return gather(p, t, x, [&](std::uint32_t i) -> Cell {
        if (i == 0 || i > cells.size()) throw Error(ErrorCode::UnassignedDependency, "cell " + std::to_string(i) + " missing");
        return cells[i - 1];
    });
}

std::vector<Cell> gather_reads(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x,
                               const Transcript& transcript)
{
    return gather(p, t, x, [&](std::uint32_t i) { return transcript.at(i); });
}

std::uint64_t query_of(std::span<const Cell> values)
{
    std::uint64_t z = 0;
    for (Cell v : values) z = (z << 1) | (v & 1u);
    return z;
}

Cell apply_det(const StepProgram& p, std::uint32_t t, std::span<const Cell> values)
{
    const Step& s = p.step(t);
    if (s.kind != StepKind::Det) throw Error(ErrorCode::BadParameter, "step " + std::to_string(t) + " is a query step");
    const Cell v = s.fn(values);
    if ((v & ~p.cell_mask()) != 0) {
        throw Error(ErrorCode::MalformedProgram, p.name() + ": step " + std::to_string(t) + " produced a value wider than w");
    }
    return v;
}

Cell sp_eval_step(const StepProgram& p, std::uint32_t t, const Transcript& assigned, std::span<const std::uint8_t> x,
                  const StochasticOracle& o, Stream& rng)
{
    const std::vector<Cell> values = gather_reads(p, t, x, assigned);
    if (p.step(t).kind == StepKind::Det) return apply_det(p, t, values);
    if (o.query_length() != p.query_length()) throw Error(ErrorCode::BadQueryLength, p.name() + ": oracle query length mismatch");
    return o.sample(query_of(values), rng);
}

SpRun sp_run(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o, Stream& rng)
{
    if (x.size() != p.input_length()) {
        throw Error(ErrorCode::BadParameter, p.name() + ": input has " + std::to_string(x.size()) + " bits, expected " +
                                                 std::to_string(p.input_length()));
    }
    SpRun run{Transcript(p.length()), 0};
    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        run.transcript.assign(t, sp_eval_step(p, t, run.transcript, x, o, rng));
    }
    run.output = output_bit(run.transcript.at(p.length()));
    return run;
}

SpRun sp_run(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o, std::uint64_t seed)
{
    Stream rng = Stream::derive(seed, {static_cast<std::uint64_t>(StreamRole::Machine)});
    return sp_run(p, x, o, rng);
}

} // namespace debate
