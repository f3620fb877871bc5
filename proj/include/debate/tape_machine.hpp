#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "debate/bits.hpp"
#include "debate/oracle.hpp"

namespace debate {

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

struct Transition {
    std::uint32_t next = 0;
    std::uint8_t write = 0;
    Move move = Move::Stay;
};

/// A machine in `query_state` spends one step asking the oracle about the
/// tape window [window_offset, window_offset + window_length); the answer
/// is written to `answer_cell`, the head stays, and control passes to
/// `return_state`.
struct QueryConvention {
    std::uint32_t query_state = 0;
    std::uint32_t return_state = 0;
    std::uint32_t window_offset = 0;
    std::uint32_t window_length = 0;
    std::uint32_t answer_cell = 0;
};

/// Snapshot of a tape machine. Fields hold raw values so that corrupted
/// configurations stay representable; validity is a separate check.
struct Configuration {
    std::uint32_t state = 0;
    std::uint32_t head = 0;
    std::uint64_t tape = 0; // bit i is cell i
    std::uint32_t counter = 0;

    std::uint8_t cell(std::uint32_t i) const { return i < 64 ? static_cast<std::uint8_t>((tape >> i) & 1u) : 0; }
    bool operator==(const Configuration&) const = default;
};

struct MachineSpec {
    std::string name;
    std::uint32_t num_states = 0;
    std::uint32_t start_state = 0;
    std::uint32_t halt_state = 0;
    std::uint32_t space = 0; // S, at most 64
    std::uint32_t time = 0;  // T
    std::uint32_t input_length = 0;
    std::optional<QueryConvention> query;
    /// Indexed by state * 2 + symbol. Entries for the halt and query states are ignored.
    std::vector<std::optional<Transition>> transitions;
};

/// Binary-tape oracle machine with bounded space S and time T.
///
/// The head is clamped to [0, S). Transitions into the halt state must not
/// move, so the output of a halted configuration is the bit under the head,
/// which is also the last bit written. A halted machine idles until step T.
class ConfigurationMachine {
public:
    explicit ConfigurationMachine(MachineSpec spec);

    const std::string& name() const { return spec_.name; }
    std::uint32_t num_states() const { return spec_.num_states; }
    std::uint32_t start_state() const { return spec_.start_state; }
    std::uint32_t halt_state() const { return spec_.halt_state; }
    std::uint32_t space() const { return spec_.space; }
    std::uint32_t time() const { return spec_.time; }
    std::uint32_t input_length() const { return spec_.input_length; }
    const std::optional<QueryConvention>& query() const { return spec_.query; }
    const MachineSpec& spec() const { return spec_; }

    const Transition& transition(std::uint32_t state, std::uint8_t symbol) const;

    bool is_valid(const Configuration& c) const;
    bool is_halted(const Configuration& c) const { return c.state == spec_.halt_state; }
    bool in_query_state(const Configuration& c) const { return spec_.query && c.state == spec_.query->query_state; }

    Configuration initial(std::span<const std::uint8_t> x) const;
    std::uint8_t output(const Configuration& c) const { return c.cell(c.head); }
    /// Big-endian packing of the query window of c.
    std::uint64_t query_index(const Configuration& c) const;

    std::uint32_t state_bits() const { return state_bits_; }
    std::uint32_t head_bits() const { return head_bits_; }
    std::uint32_t counter_bits() const { return counter_bits_; }
    std::uint32_t serialized_bits() const { return state_bits_ + head_bits_ + spec_.space + counter_bits_; }

    /// Fixed-size encoding: state, head, tape cells 0..S-1, step counter.
    Bits serialize(const Configuration& c) const;
    Configuration deserialize(std::span<const std::uint8_t> bits) const;
    /// True when every raw field fits its serialized width.
    bool fits_serialization(const Configuration& c) const;

private:
    MachineSpec spec_;
    std::uint32_t state_bits_ = 0;
    std::uint32_t head_bits_ = 0;
    std::uint32_t counter_bits_ = 0;
};

/// Successor of a running configuration. Errors: InvalidConfiguration (invalid or
/// halted), MissingOracleBit / UnexpectedOracleBit, StepBudgetExceeded (counter == T).
Configuration vm_step(const ConfigurationMachine& m, const Configuration& c,
                      std::optional<std::uint8_t> oracle_bit);

/// vm_step, except a halted configuration below step T idles (counter + 1).
Configuration vm_advance(const ConfigurationMachine& m, const Configuration& c,
                         std::optional<std::uint8_t> oracle_bit);

/// Oracle-answering advance used by simulators.
Configuration vm_advance(const ConfigurationMachine& m, const Configuration& c, const StochasticOracle& o,
                         Stream& rng);

struct VmRun {
    Configuration final_configuration;
    std::uint8_t output = 0;
    /// configurations[i] is the configuration after i steps (empty unless snapshotting).
    std::vector<Configuration> configurations;
};

VmRun vm_run(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o,
             Stream& rng, bool snapshot = true);
VmRun vm_run(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o,
             std::uint64_t seed, bool snapshot = true);

} // namespace debate
