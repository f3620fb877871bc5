#include "debate/compile.hpp"

#include <memory>

#include "debate/error.hpp"

namespace debate {

namespace {

Cell pack(std::uint8_t symbol, std::uint32_t state, std::uint32_t move, std::uint32_t state_bits)
{
    return Cell{symbol} | (Cell{state} << 1) | (Cell{move} << (1 + state_bits));
}

struct SymbolSource {
    enum class Kind { Blank, Input, Cell } kind = Kind::Blank;
    std::uint32_t index = 0;
};

} // namespace

std::uint32_t compiled_cell_width(const ConfigurationMachine& m)
{
    return 1 + m.state_bits() + 2;
}

StepProgram compile_vm_trace(const ConfigurationMachine& m, std::span<const std::uint8_t> x,
                             const StochasticOracle& o)
{
    if (m.query() && !o.is_deterministic()) {
        throw Error(ErrorCode::BadParameter, m.name() + ": trace compilation needs a deterministic oracle");
    }
    const VmRun run = vm_run(m, x, o, std::uint64_t{0}, true);

    const std::uint32_t state_bits = m.state_bits();
    const std::uint32_t width = compiled_cell_width(m);
    const std::uint32_t space = m.space();
    const std::uint32_t halt = m.halt_state();
    const std::uint32_t num_states = m.num_states();

    ProgramSpec spec;
    spec.name = m.name() + "/trace";
    spec.input_length = m.input_length();
    spec.width = width;
    spec.query_length = m.query() ? m.query()->window_length : 0;

    std::vector<SymbolSource> last_writer(space);
    for (std::uint32_t i = 0; i < m.input_length(); ++i) last_writer[i] = {SymbolSource::Kind::Input, i};

    const auto ref_for = [&](std::uint32_t pos) -> std::optional<CellRef> {
        const SymbolSource& s = last_writer[pos];
        if (s.kind == SymbolSource::Kind::Input) return CellRef::input(s.index);
        if (s.kind == SymbolSource::Kind::Cell) return CellRef::cell(s.index);
        return std::nullopt;
    };

    const auto table = std::make_shared<const std::vector<std::optional<Transition>>>(m.spec().transitions);
    const std::optional<std::uint32_t> query_state =
        m.query() ? std::optional<std::uint32_t>(m.query()->query_state) : std::nullopt;

    bool prev_was_query = false;
    for (std::uint32_t t = 1; t <= m.time(); ++t) {
        const Configuration& before = run.configurations[t - 1];
        Step step;
        if (m.in_query_state(before)) {
            const auto& q = *m.query();
            step.kind = StepKind::Query;
            for (std::uint32_t i = 0; i < q.window_length; ++i) {
                step.reads.push_back(ref_for(q.window_offset + i).value_or(CellRef::constant(0)));
            }
            step.label = "query";
            spec.steps.push_back(std::move(step));
            last_writer[q.answer_cell] = {SymbolSource::Kind::Cell, t};
            prev_was_query = true;
            continue;
        }

        const std::uint32_t head = before.head;
        int state_pos = -1;
        std::uint32_t static_state = t == 1 ? m.start_state() : m.query() ? m.query()->return_state : 0;
        if (t > 1 && !prev_was_query) {
            state_pos = 0;
            step.reads.push_back(CellRef::cell(t - 1));
        }
        int symbol_pos = -1;
        if (const auto r = ref_for(head)) {
            if (state_pos == 0 && *r == step.reads[0]) {
                symbol_pos = 0;
            } else {
                symbol_pos = static_cast<int>(step.reads.size());
                step.reads.push_back(*r);
            }
        }

        step.kind = StepKind::Det;
        step.label = "h" + std::to_string(head);
        step.fn = [table, query_state, state_pos, symbol_pos, static_state, head, state_bits, space, halt,
                   num_states](std::span<const Cell> v) -> Cell {
            const std::uint32_t state =
                state_pos < 0 ? static_state
                              : static_cast<std::uint32_t>((v[state_pos] >> 1) & ((Cell{1} << state_bits) - 1));
            const std::uint8_t symbol = symbol_pos < 0 ? 0 : static_cast<std::uint8_t>(v[symbol_pos] & 1u);
            if (state >= num_states) return 0;
            if (state == halt || state == query_state) return pack(symbol, state, 0, state_bits);
            const Transition& tr = *(*table)[std::size_t{state} * 2 + symbol];
            std::uint32_t move = 0;
            if (tr.move == Move::Left && head > 0) move = 1;
            if (tr.move == Move::Right && head + 1 < space) move = 2;
            return pack(tr.write, tr.next, move, state_bits);
        };
        spec.steps.push_back(std::move(step));
        last_writer[head] = {SymbolSource::Kind::Cell, t};
        prev_was_query = false;
    }
    return StepProgram(std::move(spec));
}

StepProgram compile_vm_trace(const ConfigurationMachine& m, std::span<const std::uint8_t> x)
{
    if (m.query()) throw Error(ErrorCode::BadParameter, m.name() + ": machine queries an oracle; pass one");
    return compile_vm_trace(m, x, StochasticOracle::constant(0, UnitRational::zero()));
}

} // namespace debate
