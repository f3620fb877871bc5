#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "debate/message.hpp"
#include "debate/oracle.hpp"
#include "debate/params.hpp"
#include "debate/step_program.hpp"
#include "debate/strategy.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

/// Deliberate verifier defects, used only to show that the exhaustive
/// check catches a broken referee.
enum class VerifierFault {
    None,
    SkipFinalCheck, // bisection and cross-examination accept without the local step check
};

struct RunOptions {
    bool record_log = false;
    VerifierFault fault = VerifierFault::None;
    /// Called with (t, z_t) after the shared coin of each stochastic round.
    std::function<void(std::uint32_t, UnitFixed)> on_coin;
};

/// Configuration bisection over an interval of T steps. A commits to the
/// final configuration, then names the midpoint of the current interval
/// each round; B answers 1 to recurse on the first half, 0 for the second,
/// or Continue to concede. On an interval of one step the verifier replays
/// that step itself (one oracle query at most). The oracle must be
/// deterministic.
DebateOutcome run_bisection(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o,
                            Strategy& a, Strategy& b, std::uint64_t seed, const RunOptions& options = {});

/// A sends a full transcript; B names one step t with its read-set, or
/// continues. The verifier recomputes only step t from the cells it reads.
/// On Continue it reads A's final bit. The oracle must be deterministic.
DebateOutcome run_crossexam(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                            Strategy& a, Strategy& b, std::uint64_t seed, const RunOptions& options = {});

/// T rounds of announce / shared coin / commit / optional abort. Needs a
/// bit-cell program (w = 1) that declares its Lipschitz constant.
DebateOutcome run_stochastic(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                             Strategy& a, Strategy& b, const ProtocolParams& params, std::uint64_t seed,
                             const RunOptions& options = {});

/// A names a witness w of the given length; the debate then runs on x || w,
/// by cross-examination (Det) or the stochastic protocol (Stoch).
DebateOutcome run_witness(WitnessMode mode, const StepProgram& verifier, std::span<const std::uint8_t> x,
                          std::uint32_t witness_length, const StochasticOracle& o, Strategy& a, Strategy& b,
                          const ProtocolParams& params, std::uint64_t seed, const RunOptions& options = {});

/// 0 iff |p_oracle - p_hat| >= 1/(4d), else 1.
std::uint8_t verifier_abort_check(const UnitRational& p_hat, const UnitRational& p_oracle, std::uint64_t d);

/// Verifier bit budget for checking step t: l + w + |I(t)| ceil(log2 T) + ceil(log2 T).
std::uint64_t crossexam_bit_budget(const StepProgram& p, std::uint32_t t);

} // namespace debate
