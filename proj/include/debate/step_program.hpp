#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "debate/bits.hpp"
#include "debate/oracle.hpp"

namespace debate {

/// Transcript cell: a w-bit word (w = 1 for bit transcripts).
using Cell = std::uint64_t;

inline std::uint8_t output_bit(Cell c) { return static_cast<std::uint8_t>(c & 1u); }

/// One coordinate a step reads: an input bit, an earlier transcript cell,
/// or a constant bit baked into the program.
struct CellRef {
    enum class Source : std::uint8_t { Input, Cell, Constant };

    Source source = Source::Cell;
    std::uint32_t index = 0; // Input: 0-based bit; Cell: 1-based step; Constant: the bit value

    static CellRef input(std::uint32_t i) { return {Source::Input, i}; }
    static CellRef cell(std::uint32_t t) { return {Source::Cell, t}; }
    static CellRef constant(std::uint32_t b) { return {Source::Constant, b}; }

    bool operator==(const CellRef&) const = default;
    /// "x3", "c7" or "#1".
    std::string str() const;
};

/// Deterministic step function. Receives the read values in read-set
/// order: a bit for input/constant refs, the full cell for cell refs.
using DetFunction = std::function<Cell(std::span<const Cell>)>;

enum class StepKind : std::uint8_t { Det, Query };

struct Step {
    StepKind kind = StepKind::Det;
    std::vector<CellRef> reads; // I(t)
    DetFunction fn;             // Det only
    std::string label;
};

struct ProgramSpec {
    std::string name;
    std::uint32_t input_length = 0;
    std::uint32_t width = 1;
    std::uint32_t query_length = 0;
    std::vector<Step> steps;
    /// Declared Lipschitz constant, required by the stochastic protocol.
    std::optional<double> lipschitz;
};

/// Straight-line trace program: step t computes cell t from the
/// coordinates in I(t), either deterministically or by one oracle query on
/// the concatenated low bits of its reads. Cell T's low bit is the output.
class StepProgram {
public:
    explicit StepProgram(ProgramSpec spec);

    const std::string& name() const { return spec_.name; }
    std::uint32_t length() const { return static_cast<std::uint32_t>(spec_.steps.size()); }
    std::uint32_t input_length() const { return spec_.input_length; }
    std::uint32_t width() const { return spec_.width; }
    std::uint32_t query_length() const { return spec_.query_length; }
    /// l: the most bits any single step consumes from its read-set.
    std::uint32_t max_read_bits() const { return max_read_bits_; }
    std::uint32_t num_query_steps() const { return num_query_steps_; }
    const std::optional<double>& lipschitz() const { return spec_.lipschitz; }
    Cell cell_mask() const { return spec_.width >= 64 ? ~Cell{0} : ((Cell{1} << spec_.width) - 1); }

    /// 1-based, t in [1, T].
    const Step& step(std::uint32_t t) const;
    const std::vector<Step>& steps() const { return spec_.steps; }

    /// Bits consumed from transcript and input when step t is checked.
    std::uint32_t read_bits(std::uint32_t t) const;

private:
    ProgramSpec spec_;
    std::uint32_t max_read_bits_ = 0;
    std::uint32_t num_query_steps_ = 0;
};

/// Length-T sequence of write-once cells.
class Transcript {
public:
    explicit Transcript(std::size_t length) : cells_(length) {}
    static Transcript from_cells(std::span<const Cell> cells);

    std::size_t size() const { return cells_.size(); }
    bool assigned(std::uint32_t t) const;
    /// Throws UnassignedDependency for unassigned cells.
    Cell at(std::uint32_t t) const;
    /// Throws AlreadyAssigned if the cell holds a value.
    void assign(std::uint32_t t, Cell value);
    /// Length of the longest fully assigned prefix.
    std::size_t assigned_prefix() const;
    /// All cells; throws UnassignedDependency if any is missing.
    std::vector<Cell> values() const;

    /// ceil(w/4) hex digits per cell, most significant first.
    std::string to_hex(std::uint32_t width) const;
    static Transcript from_hex(std::string_view hex, std::uint32_t width);

private:
    std::vector<std::optional<Cell>> cells_;
};

/// Values of I(t) taken from x and a full candidate transcript (cells[i] is cell i+1).
std::vector<Cell> gather_reads(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x,
                               std::span<const Cell> cells);
/// Same, from a partially assigned transcript.
std::vector<Cell> gather_reads(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x,
                               const Transcript& transcript);

/// Query index formed from the low bits of the read values.
std::uint64_t query_of(std::span<const Cell> values);

/// f_t applied to the read values of a Det step.
Cell apply_det(const StepProgram& p, std::uint32_t t, std::span<const Cell> values);

Cell sp_eval_step(const StepProgram& p, std::uint32_t t, const Transcript& assigned, std::span<const std::uint8_t> x,
                  const StochasticOracle& o, Stream& rng);

struct SpRun {
    Transcript transcript;
    std::uint8_t output = 0;
};

SpRun sp_run(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o, Stream& rng);
SpRun sp_run(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o, std::uint64_t seed);

} // namespace debate
