#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "debate/bits.hpp"
#include "debate/rational.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

enum class Party : std::uint8_t { A, B };

std::string to_string(Party p);

struct NoMessage {};
/// Raw rational so that announcements outside [0, 1] stay representable.
struct ProbabilityAnnouncement {
    mpq_class p;
};
struct RandomShare {
    UnitFixed z;
};
struct SampledBit {
    std::uint8_t bit = 0;
};
struct Abort {};
struct Continue {};
struct ConfigurationMsg {
    Configuration c;
};
struct HalfSelector {
    std::uint8_t b = 0;
};
struct TranscriptMsg {
    std::vector<Cell> cells;
};
struct LocationClaim {
    std::uint32_t t = 0;
    std::vector<CellRef> reads;
};
struct WitnessMsg {
    Bits w;
};

using Message = std::variant<NoMessage, ProbabilityAnnouncement, RandomShare, SampledBit, Abort, Continue,
                             ConfigurationMsg, HalfSelector, TranscriptMsg, LocationClaim, WitnessMsg>;

std::string kind_name(const Message& m);
/// One-line human-readable rendering used in traces.
std::string describe(const Message& m);

struct Counters {
    std::uint64_t verifier_oracle_queries = 0;
    std::uint64_t verifier_bits_read = 0;
    std::uint64_t verifier_configurations_read = 0;
    std::uint64_t proverA_steps = 0;
    std::uint64_t proverB_steps = 0;
    std::uint64_t proverA_oracle_samples = 0;
    std::uint64_t proverB_oracle_samples = 0;

    bool operator==(const Counters&) const = default;
};

struct LogEntry {
    std::uint32_t round = 0;
    std::string actor; // "A", "B", "A'", "B'" (share copies) or "V"
    std::string text;

    bool operator==(const LogEntry&) const = default;
};

struct Forfeit {
    Party party = Party::A;
    std::string reason;

    bool operator==(const Forfeit&) const = default;
};

struct DebateOutcome {
    std::string protocol;
    std::uint8_t verdict = 0;
    std::optional<std::uint32_t> abort_round;
    /// Step the verifier re-checked (cross-examination only).
    std::optional<std::uint32_t> checked_step;
    std::optional<Forfeit> forfeit;
    Counters counters;
    std::vector<LogEntry> log;
    std::uint64_t seed = 0;

    bool operator==(const DebateOutcome&) const = default;
};

/// Single line of space-separated key=value pairs:
///   protocol=crossexam verdict=1 abort_round=- checked_step=4 forfeit=- seed=7 verifier_oracle_queries=1 ...
/// Counters follow in the order of Counters.
std::string to_record(const DebateOutcome& o);

/// One line per logged event: "<round>\t<actor>\t<text>".
std::string to_trace(const DebateOutcome& o);

} // namespace debate
