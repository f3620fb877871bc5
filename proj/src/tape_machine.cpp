#include "debate/tape_machine.hpp"

#include "debate/error.hpp"

namespace debate {

namespace {

[[noreturn]] void bad_machine(const std::string& name, const std::string& why)
{
    throw Error(ErrorCode::MalformedMachine, name + ": " + why);
}

void put_field(Bits& out, std::uint64_t value, std::uint32_t width)
{
    for (std::uint32_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

std::uint64_t take_field(std::span<const std::uint8_t> bits, std::size_t& pos, std::uint32_t width)
{
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < width; ++i) v = (v << 1) | (bits[pos++] & 1u);
    return v;
}

} // namespace

ConfigurationMachine::ConfigurationMachine(MachineSpec spec) : spec_(std::move(spec))
{
    const auto& s = spec_;
    if (s.num_states == 0) bad_machine(s.name, "no states");
    if (s.start_state >= s.num_states || s.halt_state >= s.num_states) bad_machine(s.name, "start/halt out of range");
    if (s.space == 0 || s.space > 64) bad_machine(s.name, "space must be in [1, 64]");
    if (s.time == 0) bad_machine(s.name, "time bound must be positive");
    if (s.input_length > s.space) bad_machine(s.name, "input longer than the tape");
    if (s.transitions.size() != std::size_t{s.num_states} * 2) bad_machine(s.name, "transition table size");
    if (s.query) {
        const auto& q = *s.query;
        if (q.query_state >= s.num_states || q.return_state >= s.num_states) bad_machine(s.name, "query states out of range");
        if (q.query_state == s.halt_state || q.return_state == s.halt_state) {
            bad_machine(s.name, "query and return states must differ from halt");
        }
        if (q.window_length > 64 || q.window_offset + q.window_length > s.space) bad_machine(s.name, "query window off tape");
        if (q.answer_cell >= s.space) bad_machine(s.name, "answer cell off tape");
    }
    for (std::uint32_t state = 0; state < s.num_states; ++state) {
        if (state == s.halt_state || (s.query && state == s.query->query_state)) continue;
        for (std::uint8_t sym = 0; sym < 2; ++sym) {
            const auto& t = s.transitions[state * 2 + sym];
            if (!t) bad_machine(s.name, "missing transition for state " + std::to_string(state));
            if (t->next >= s.num_states) bad_machine(s.name, "transition to unknown state");
            if (t->write > 1) bad_machine(s.name, "non-binary write");
            if (t->next == s.halt_state && t->move != Move::Stay) bad_machine(s.name, "halting transitions must not move");
        }
    }
    state_bits_ = ceil_log2(s.num_states);
    head_bits_ = ceil_log2(s.space);
    counter_bits_ = ceil_log2(std::uint64_t{s.time} + 1);
}

const Transition& ConfigurationMachine::transition(std::uint32_t state, std::uint8_t symbol) const
{
    const auto& t = spec_.transitions.at(std::size_t{state} * 2 + (symbol & 1u));
    if (!t) throw Error(ErrorCode::InvalidConfiguration, "no transition from state " + std::to_string(state));
    return *t;
}

bool ConfigurationMachine::is_valid(const Configuration& c) const
{
    if (c.state >= spec_.num_states || c.head >= spec_.space || c.counter > spec_.time) return false;
    return spec_.space == 64 || (c.tape >> spec_.space) == 0;
}

Configuration ConfigurationMachine::initial(std::span<const std::uint8_t> x) const
{
    if (x.size() != spec_.input_length) {
        throw Error(ErrorCode::BadParameter, spec_.name + ": input has " + std::to_string(x.size()) +
                                                 " bits, expected " + std::to_string(spec_.input_length));
    }
    Configuration c;
    c.state = spec_.start_state;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) c.tape |= std::uint64_t{1} << i;
    }
    return c;
}

std::uint64_t ConfigurationMachine::query_index(const Configuration& c) const
{
    if (!spec_.query) throw Error(ErrorCode::InvalidConfiguration, "machine has no query convention");
    std::uint64_t z = 0;
    for (std::uint32_t i = 0; i < spec_.query->window_length; ++i) {
        z = (z << 1) | c.cell(spec_.query->window_offset + i);
    }
    return z;
}

Bits ConfigurationMachine::serialize(const Configuration& c) const
{
    Bits out;
    out.reserve(serialized_bits());
    put_field(out, c.state, state_bits_);
    put_field(out, c.head, head_bits_);
    for (std::uint32_t i = 0; i < spec_.space; ++i) out.push_back(c.cell(i));
    put_field(out, c.counter, counter_bits_);
    return out;
}

Configuration ConfigurationMachine::deserialize(std::span<const std::uint8_t> bits) const
{
    if (bits.size() != serialized_bits()) {
        throw Error(ErrorCode::BadParameter, "configuration encoding has wrong length");
    }
    Configuration c;
    std::size_t pos = 0;
    c.state = static_cast<std::uint32_t>(take_field(bits, pos, state_bits_));
    c.head = static_cast<std::uint32_t>(take_field(bits, pos, head_bits_));
    for (std::uint32_t i = 0; i < spec_.space; ++i) {
        if (bits[pos++] & 1u) c.tape |= std::uint64_t{1} << i;
    }
    c.counter = static_cast<std::uint32_t>(take_field(bits, pos, counter_bits_));
    return c;
}

bool ConfigurationMachine::fits_serialization(const Configuration& c) const
{
    const auto fits = [](std::uint64_t v, std::uint32_t width) { return width >= 64 || (v >> width) == 0; };
    return fits(c.state, state_bits_) && fits(c.head, head_bits_) && fits(c.counter, counter_bits_) &&
           (spec_.space == 64 || (c.tape >> spec_.space) == 0);
}

Configuration vm_step(const ConfigurationMachine& m, const Configuration& c, std::optional<std::uint8_t> oracle_bit)
{
    if (!m.is_valid(c)) throw Error(ErrorCode::InvalidConfiguration, m.name() + ": invalid configuration");
    if (m.is_halted(c)) throw Error(ErrorCode::InvalidConfiguration, m.name() + ": halted configuration has no successor");
    if (c.counter >= m.time()) throw Error(ErrorCode::StepBudgetExceeded, m.name() + ": step counter at T");

    Configuration next = c;
    next.counter = c.counter + 1;
    if (m.in_query_state(c)) {
        if (!oracle_bit) throw Error(ErrorCode::MissingOracleBit, m.name() + ": query state needs an oracle bit");
        const auto& q = *m.query();
        const std::uint64_t mask = std::uint64_t{1} << q.answer_cell;
        next.tape = (*oracle_bit & 1u) ? (c.tape | mask) : (c.tape & ~mask);
        next.state = q.return_state;
        return next;
    }
    if (oracle_bit) throw Error(ErrorCode::UnexpectedOracleBit, m.name() + ": oracle bit outside the query state");

    const Transition& t = m.transition(c.state, c.cell(c.head));
    const std::uint64_t mask = std::uint64_t{1} << c.head;
    next.tape = t.write ? (c.tape | mask) : (c.tape & ~mask);
    next.state = t.next;
    if (t.move == Move::Left && c.head > 0) next.head = c.head - 1;
    if (t.move == Move::Right && c.head + 1 < m.space()) next.head = c.head + 1;
    return next;
}

Configuration vm_advance(const ConfigurationMachine& m, const Configuration& c, std::optional<std::uint8_t> oracle_bit)
{
    if (m.is_valid(c) && m.is_halted(c) && c.counter < m.time()) {
        if (oracle_bit) throw Error(ErrorCode::UnexpectedOracleBit, m.name() + ": oracle bit while halted");
        Configuration next = c;
        ++next.counter;
        return next;
    }
    return vm_step(m, c, oracle_bit);
}

Configuration vm_advance(const ConfigurationMachine& m, const Configuration& c, const StochasticOracle& o, Stream& rng)
{
    if (m.is_valid(c) && m.in_query_state(c)) return vm_step(m, c, o.sample(m.query_index(c), rng));
    return vm_advance(m, c, std::nullopt);
}

VmRun vm_run(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o, Stream& rng,
             bool snapshot)
{
    if (m.query() && o.query_length() != m.query()->window_length) {
        throw Error(ErrorCode::BadQueryLength, m.name() + ": oracle query length does not match the window");
    }
    VmRun run;
    Configuration c = m.initial(x);
    if (snapshot) {
        run.configurations.reserve(std::size_t{m.time()} + 1);
        run.configurations.push_back(c);
    }
    for (std::uint32_t i = 0; i < m.time(); ++i) {
        c = vm_advance(m, c, o, rng);
        if (snapshot) run.configurations.push_back(c);
    }
    if (!m.is_halted(c)) throw Error(ErrorCode::StepBudgetExceeded, m.name() + ": did not halt within T steps");
    run.final_configuration = c;
    run.output = m.output(c);
    return run;
}

VmRun vm_run(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o,
             std::uint64_t seed, bool snapshot)
{
    Stream rng = Stream::derive(seed, {static_cast<std::uint64_t>(StreamRole::Machine)});
    return vm_run(m, x, o, rng, snapshot);
}

} // namespace debate
