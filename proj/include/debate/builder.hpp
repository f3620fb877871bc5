#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "debate/step_program.hpp"

namespace debate {

/// Bit-level gate used by w = 1 programs. Table gates index their truth
/// table by the inputs read big-endian.
enum class Gate { Copy, Not, And, Or, Xor, Xnor, Maj, Table };

Gate parse_gate(const std::string& name);
std::string to_string(Gate g);

/// Step function for a gate over `arity` bit inputs.
DetFunction gate_function(Gate g, std::size_t arity, std::vector<std::uint8_t> table = {});

/// Incremental construction of bit-cell programs.
class ProgramBuilder {
public:
    ProgramBuilder(std::string name, std::uint32_t input_length, std::uint32_t query_length = 0);

    CellRef input(std::uint32_t i) const { return CellRef::input(i); }
    static CellRef constant(std::uint8_t b) { return CellRef::constant(b); }

    CellRef gate(Gate g, std::vector<CellRef> reads, std::string label = {});
    CellRef table(std::vector<CellRef> reads, std::vector<std::uint8_t> truth, std::string label = {});
    CellRef det(std::vector<CellRef> reads, DetFunction fn, std::string label = {});
    CellRef query(std::vector<CellRef> reads, std::string label = {});

    /// Full adder on three bits: returns {sum, carry}.
    std::pair<CellRef, CellRef> full_adder(CellRef a, CellRef b, CellRef c);

    std::uint32_t size() const { return static_cast<std::uint32_t>(spec_.steps.size()); }
    /// The last step added must be the output.
    StepProgram build(std::optional<double> lipschitz) &&;

private:
    ProgramSpec spec_;
};

} // namespace debate
