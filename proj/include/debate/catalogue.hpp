#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "debate/bits.hpp"
#include "debate/oracle.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

/// A machine together with the oracle it runs against and the inputs to try.
struct MachineCase {
    ConfigurationMachine machine;
    StochasticOracle oracle;
    std::vector<Bits> inputs;
};

struct ProgramCase {
    StepProgram program;
    StochasticOracle oracle;
    std::vector<Bits> inputs;
    /// Known Lipschitz constant, when one is proven by hand.
    std::optional<double> known_K;
};

/// All bit strings of length n, in index order.
std::vector<Bits> all_inputs(std::uint32_t n);

ConfigurationMachine const_machine(std::uint8_t bit);
ConfigurationMachine identity_machine();
ConfigurationMachine parity3_machine();
/// Adds 2 to a 2-bit little-endian counter and reports the overflow; T = 10.
ConfigurationMachine counter10_machine();
/// Asks the oracle about x0 and outputs the answer.
ConfigurationMachine query_echo_machine();
/// AND of four input bits in a 16-step, 8-cell budget (halts early and idles).
ConfigurationMachine and4_sweep_machine();

/// Named tape machines with every input of their declared length.
std::vector<MachineCase> stock_machines();

/// Every machine with two working states, one input bit, two cells and
/// T = 4 that halts on both inputs within T.
std::vector<ConfigurationMachine> two_state_machines();

StepProgram constant_program(std::uint8_t bit);
/// y_1 = O(x0).
StepProgram single_query_program();
/// y_1 = O(x0), y_2 = y_1, y_3 = y_2.
StepProgram single_query_copy_program();
/// Three queries of O(x0) and their majority.
StepProgram majority3_program();

/// Subset-sum style witness verifier over fixed item weights. Input is a
/// target (little-endian, `target_bits` wide) followed by a selection mask.
/// Det steps add the selected weights with ripple-carry adders and compare
/// against the target; one query asks the oracle to approve the mask; the
/// output is the AND of both.
StepProgram subset_sum_verifier(const std::vector<std::uint32_t>& weights, std::uint32_t target_bits);

/// Bit-cell programs (with a deterministic oracle) used for exhaustive
/// cross-examination checks.
std::vector<ProgramCase> stock_programs();

} // namespace debate
