#pragma once

#include <span>

#include "debate/oracle.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

/// Trace program for one run of m on x.
///
/// Step t re-derives the t-th transition of the machine. A cell holds the
/// written symbol in bit 0, the next state above it, and the effective head
/// move (0 stay, 1 left, 2 right) in the top two bits. Query steps hold only
/// the oracle answer. Read-sets are fixed by the recorded run: the previous
/// cell for the state, and the last cell that wrote under the head (or the
/// input bit, or nothing for a blank cell) for the symbol.
///
/// The oracle must be deterministic; it fixes which branch of the run the
/// read-sets follow. Throws StepBudgetExceeded if m does not halt within T.
StepProgram compile_vm_trace(const ConfigurationMachine& m, std::span<const std::uint8_t> x,
                             const StochasticOracle& o);

/// For machines without a query convention.
StepProgram compile_vm_trace(const ConfigurationMachine& m, std::span<const std::uint8_t> x);

/// Width of a compiled cell for m.
std::uint32_t compiled_cell_width(const ConfigurationMachine& m);

} // namespace debate
