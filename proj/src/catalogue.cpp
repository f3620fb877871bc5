#include "debate/catalogue.hpp"

#include "debate/builder.hpp"
#include "debate/error.hpp"

namespace debate {

namespace {

struct Table {
    std::vector<std::optional<Transition>> entries;

    explicit Table(std::uint32_t states) : entries(std::size_t{states} * 2) {}
    void set(std::uint32_t state, std::uint8_t symbol, std::uint32_t next, std::uint8_t write, Move move)
    {
        entries[std::size_t{state} * 2 + symbol] = Transition{next, write, move};
    }
};

MachineSpec base_spec(std::string name, std::uint32_t states, std::uint32_t halt, std::uint32_t space,
                      std::uint32_t time, std::uint32_t input_length)
{
    MachineSpec s;
    s.name = std::move(name);
    s.num_states = states;
    s.start_state = 0;
    s.halt_state = halt;
    s.space = space;
    s.time = time;
    s.input_length = input_length;
    return s;
}

} // namespace

std::vector<Bits> all_inputs(std::uint32_t n)
{
    std::vector<Bits> out;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) out.push_back(index_to_bits(i, n));
    return out;
}

ConfigurationMachine const_machine(std::uint8_t bit)
{
    MachineSpec s = base_spec(bit ? "const1" : "const0", 2, 1, 1, 1, 1);
    Table t(2);
    t.set(0, 0, 1, bit, Move::Stay);
    t.set(0, 1, 1, bit, Move::Stay);
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

ConfigurationMachine identity_machine()
{
    MachineSpec s = base_spec("identity", 2, 1, 1, 1, 1);
    Table t(2);
    t.set(0, 0, 1, 0, Move::Stay);
    t.set(0, 1, 1, 1, Move::Stay);
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

ConfigurationMachine parity3_machine()
{
    // State pos * 2 + parity while reading cell pos; state 8 halts.
    MachineSpec s = base_spec("parity3", 9, 8, 4, 4, 3);
    Table t(9);
    for (std::uint32_t pos = 0; pos < 4; ++pos) {
        for (std::uint8_t par = 0; par < 2; ++par) {
            for (std::uint8_t sym = 0; sym < 2; ++sym) {
                if (pos < 3) {
                    t.set(pos * 2 + par, sym, (pos + 1) * 2 + (par ^ sym), sym, Move::Right);
                } else {
                    t.set(pos * 2 + par, sym, 8, par, Move::Stay);
                }
            }
        }
    }
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

ConfigurationMachine counter10_machine()
{
    // Cells 0-1 hold the counter (least significant first), cell 2 the overflow.
    const auto carry = [](std::uint32_t k, std::uint32_t p) { return (k - 1) * 3 + p; };     // 0..5
    const auto back = [](std::uint32_t k, std::uint32_t p) { return 6 + (k - 1) * 3 + p; }; // 6..11
    const auto finish = [](std::uint32_t p) { return 12 + p; };                             // 12..14
    const std::uint32_t halt = 15;
    MachineSpec s = base_spec("counter10", 16, halt, 3, 10, 2);
    s.start_state = carry(2, 0);
    Table t(16);
    const auto done = [&](std::uint32_t k) { return k == 1 ? finish(0) : carry(k - 1, 0); };
    for (std::uint32_t k = 1; k <= 2; ++k) {
        for (std::uint32_t p = 0; p < 3; ++p) {
            if (p < 2) {
                t.set(carry(k, p), 1, carry(k, p + 1), 0, Move::Right);
            } else {
                t.set(carry(k, p), 1, back(k, p - 1), 1, Move::Left);
            }
            if (p == 0) {
                t.set(carry(k, p), 0, done(k), 1, Move::Stay);
            } else {
                t.set(carry(k, p), 0, back(k, p - 1), 1, Move::Left);
            }
            for (std::uint8_t sym = 0; sym < 2; ++sym) {
                if (p == 0) {
                    t.set(back(k, p), sym, done(k), sym, Move::Stay);
                } else {
                    t.set(back(k, p), sym, back(k, p - 1), sym, Move::Left);
                }
            }
        }
    }
    for (std::uint32_t p = 0; p < 3; ++p) {
        for (std::uint8_t sym = 0; sym < 2; ++sym) {
            if (p < 2) {
                t.set(finish(p), sym, finish(p + 1), sym, Move::Right);
            } else {
                t.set(finish(p), sym, halt, sym, Move::Stay);
            }
        }
    }
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

ConfigurationMachine query_echo_machine()
{
    // 0 queries O(cell 0) into cell 1; 1 steps right; 2 copies the answer and halts.
    MachineSpec s = base_spec("query_echo", 4, 3, 2, 3, 1);
    s.query = QueryConvention{0, 1, 0, 1, 1};
    Table t(4);
    for (std::uint8_t sym = 0; sym < 2; ++sym) {
        t.set(1, sym, 2, sym, Move::Right);
        t.set(2, sym, 3, sym, Move::Stay);
    }
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

ConfigurationMachine and4_sweep_machine()
{
    // State pos * 2 + all_ones while reading cell pos; state 10 halts.
    MachineSpec s = base_spec("and4_sweep", 11, 10, 8, 16, 4);
    s.start_state = 1;
    Table t(11);
    for (std::uint32_t pos = 0; pos < 5; ++pos) {
        for (std::uint8_t flag = 0; flag < 2; ++flag) {
            for (std::uint8_t sym = 0; sym < 2; ++sym) {
                if (pos < 4) {
                    t.set(pos * 2 + flag, sym, (pos + 1) * 2 + (flag & sym), sym, Move::Right);
                } else {
                    t.set(pos * 2 + flag, sym, 10, flag, Move::Stay);
                }
            }
        }
    }
    s.transitions = std::move(t.entries);
    return ConfigurationMachine(std::move(s));
}

std::vector<MachineCase> stock_machines()
{
    const StochasticOracle none = StochasticOracle::constant(0, UnitRational::zero());
    const StochasticOracle negate = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});
    std::vector<MachineCase> out;
    for (ConfigurationMachine m : {const_machine(1), const_machine(0), identity_machine(), parity3_machine(),
                                   counter10_machine(), and4_sweep_machine()}) {
        std::vector<Bits> inputs = all_inputs(m.input_length());
        out.push_back({std::move(m), none, std::move(inputs)});
    }
    out.push_back({query_echo_machine(), negate, all_inputs(1)});
    return out;
}

std::vector<ConfigurationMachine> two_state_machines()
{
    std::vector<Transition> choices;
    for (std::uint32_t next = 0; next < 2; ++next) {
        for (std::uint8_t write = 0; write < 2; ++write) {
            for (Move move : {Move::Left, Move::Stay, Move::Right}) choices.push_back({next, write, move});
        }
    }
    choices.push_back({2, 0, Move::Stay});
    choices.push_back({2, 1, Move::Stay});

    const StochasticOracle none = StochasticOracle::constant(0, UnitRational::zero());
    const std::vector<Bits> inputs = all_inputs(1);
    const std::size_t n = choices.size();
    std::vector<ConfigurationMachine> out;
    for (std::size_t code = 0; code < n * n * n * n; ++code) {
        MachineSpec s = base_spec("2state#" + std::to_string(code), 3, 2, 2, 4, 1);
        s.transitions.resize(6);
        std::size_t c = code;
        for (std::size_t slot = 0; slot < 4; ++slot) {
            s.transitions[slot] = choices[c % n];
            c /= n;
        }
        ConfigurationMachine m(std::move(s));
        bool halts = true;
        for (const Bits& x : inputs) {
            try {
                vm_run(m, x, none, std::uint64_t{0}, false);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::StepBudgetExceeded) throw;
                halts = false;
                break;
            }
        }
        if (halts) out.push_back(std::move(m));
    }
    return out;
}

StepProgram constant_program(std::uint8_t bit)
{
    ProgramBuilder b(bit ? "constant1" : "constant0", 1);
    b.det({}, [bit](std::span<const Cell>) -> Cell { return bit & 1u; }, "const");
    return std::move(b).build(0.0);
}

StepProgram single_query_program()
{
    ProgramBuilder b("single_query", 1, 1);
    b.query({b.input(0)});
    return std::move(b).build(1.0);
}

StepProgram single_query_copy_program()
{
    ProgramBuilder b("single_query_copy", 1, 1);
    const CellRef q = b.query({b.input(0)});
    const CellRef c = b.gate(Gate::Copy, {q});
    b.gate(Gate::Copy, {c});
    return std::move(b).build(1.0);
}

StepProgram majority3_program()
{
    ProgramBuilder b("majority3", 1, 1);
    const CellRef q1 = b.query({b.input(0)});
    const CellRef q2 = b.query({b.input(0)});
    const CellRef q3 = b.query({b.input(0)});
    b.gate(Gate::Maj, {q1, q2, q3});
    return std::move(b).build(1.5);
}

StepProgram subset_sum_verifier(const std::vector<std::uint32_t>& weights, std::uint32_t target_bits)
{
    std::uint64_t total = 0;
    for (std::uint32_t w : weights) total += w;
    if (weights.empty() || target_bits == 0 || target_bits > 32 || total >= (std::uint64_t{1} << target_bits)) {
        throw Error(ErrorCode::BadParameter, "subset-sum weights must be non-empty and sum below 2^target_bits");
    }
    const auto m = static_cast<std::uint32_t>(weights.size());
    ProgramBuilder b("subset_sum", target_bits + m, m);
    const CellRef zero = ProgramBuilder::constant(0);
    const auto is_zero = [&](const CellRef& r) { return r == zero; };

    std::vector<CellRef> sum(target_bits, zero);
    for (std::uint32_t i = 0; i < m; ++i) {
        const CellRef select = b.input(target_bits + i);
        CellRef carry = zero;
        for (std::uint32_t j = 0; j < target_bits; ++j) {
            const CellRef addend = (weights[i] >> j) & 1u ? select : zero;
            if (is_zero(addend) && is_zero(carry)) continue;
            if (is_zero(sum[j]) && is_zero(carry)) {
                sum[j] = addend;
                continue;
            }
            if (is_zero(sum[j]) && is_zero(addend)) {
                sum[j] = carry;
                carry = zero;
                continue;
            }
            std::vector<CellRef> in{sum[j]};
            if (!is_zero(addend)) in.push_back(addend);
            if (!is_zero(carry)) in.push_back(carry);
            if (in.size() == 2) {
                const CellRef s = b.gate(Gate::Xor, in, "sum");
                carry = b.gate(Gate::And, in, "carry");
                sum[j] = s;
            } else {
                const auto [s, c] = b.full_adder(in[0], in[1], in[2]);
                sum[j] = s;
                carry = c;
            }
        }
    }

    std::vector<CellRef> equal;
    for (std::uint32_t j = 0; j < target_bits; ++j) {
        if (is_zero(sum[j])) {
            equal.push_back(b.gate(Gate::Not, {b.input(j)}, "eq"));
        } else {
            equal.push_back(b.gate(Gate::Xnor, {sum[j], b.input(j)}, "eq"));
        }
    }
    const CellRef all_equal = b.gate(Gate::And, equal, "sum==target");
    std::vector<CellRef> mask;
    for (std::uint32_t i = 0; i < m; ++i) mask.push_back(b.input(target_bits + i));
    const CellRef approve = b.query(mask, "approve");
    b.gate(Gate::And, {all_equal, approve}, "accept");
    return std::move(b).build(1.0);
}

std::vector<ProgramCase> stock_programs()
{
    const StochasticOracle negate = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});
    std::vector<ProgramCase> out;
    out.push_back({constant_program(1), negate, all_inputs(1), 0.0});
    out.push_back({constant_program(0), negate, all_inputs(1), 0.0});
    out.push_back({single_query_program(), negate, all_inputs(1), 1.0});
    out.push_back({single_query_copy_program(), negate, all_inputs(1), 1.0});
    out.push_back({majority3_program(), negate, all_inputs(1), 1.5});

    std::vector<UnitRational> approve(8, UnitRational::one());
    approve[7] = UnitRational::zero();
    out.push_back({subset_sum_verifier({3, 5, 6}, 4), StochasticOracle::table(3, approve), all_inputs(7), 1.0});
    return out;
}

} // namespace debate
