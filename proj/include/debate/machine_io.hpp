#pragma once

#include <string>
#include <string_view>

#include "debate/oracle.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

/// Tape machine text format (one directive per line, '#' starts a comment):
///
///   name parity3
///   states 9          start 0 / halt 8 / space 4 / time 4 / input 3 likewise
///   query state=0 return=1 offset=0 length=1 answer=1      (optional)
///   0 1 -> 3 1 R      state symbol -> next write move(L|S|R)
ConfigurationMachine parse_machine(std::string_view text);

/// Bit-cell program text format:
///
///   name majority3
///   input 1
///   query_length 1
///   lipschitz 1.5                (optional)
///   step query x0                refs: xI input bit, cT earlier cell, #0/#1 constant
///   step maj c1 c2 c3            gates: copy not and or xor xnor maj
///   step table 0110 c1 x0        truth table indexed by the reads, first read most significant
///   step const 1
StepProgram parse_program(std::string_view text);

/// Oracle text format. Either one line per query, "bitstring probability",
/// covering all 2^l queries, or a single line "constant <l> <probability>".
/// Probabilities are "n/d" or decimals.
StochasticOracle parse_oracle(std::string_view text);

std::string format_machine(const ConfigurationMachine& m);
std::string format_oracle(const StochasticOracle& o);

/// "catalogue:<name>" names a built-in; anything else is read as a file.
/// Oracles additionally accept an inline "constant ..." or "table <l> p...".
ConfigurationMachine load_machine(const std::string& ref);
StepProgram load_program(const std::string& ref);
StochasticOracle load_oracle(const std::string& ref);

std::string read_file(const std::string& path);

} // namespace debate
