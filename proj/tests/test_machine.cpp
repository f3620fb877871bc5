#include <gtest/gtest.h>

#include "debate/catalogue.hpp"
#include "debate/compile.hpp"
#include "debate/error.hpp"
#include "debate/machine_io.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

using namespace debate;

namespace {

const StochasticOracle kNone = StochasticOracle::constant(0, UnitRational::zero());
const StochasticOracle kNegate = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});

std::uint8_t run_output(const ConfigurationMachine& m, const Bits& x, const StochasticOracle& o = kNone)
{
    return vm_run(m, x, o, std::uint64_t{1}, false).output;
}

// The first step at which the machine reaches its halt state.
std::uint32_t halting_step(const ConfigurationMachine& m, const Bits& x, const StochasticOracle& o = kNone)
{
    const VmRun run = vm_run(m, x, o, std::uint64_t{1}, true);
    for (std::uint32_t t = 0; t < run.configurations.size(); ++t) {
        if (m.is_halted(run.configurations[t])) return t;
    }
    return m.time() + 1;
}

} // namespace

TEST(TapeMachine, CatalogueMachinesComputeTheirFunctions)
{
    for (const Bits& x : all_inputs(3)) {
        EXPECT_EQ(run_output(parity3_machine(), x), x[0] ^ x[1] ^ x[2]) << bits_to_string(x);
    }
    for (const Bits& x : all_inputs(4)) {
        EXPECT_EQ(run_output(and4_sweep_machine(), x), x[0] & x[1] & x[2] & x[3]) << bits_to_string(x);
    }
    for (const Bits& x : all_inputs(2)) {
        // little-endian counter x0 + 2 x1 plus two overflows exactly when x1 is set
        EXPECT_EQ(run_output(counter10_machine(), x), x[1]) << bits_to_string(x);
        EXPECT_LE(halting_step(counter10_machine(), x), 10u);
    }
    for (const Bits& x : all_inputs(1)) {
        EXPECT_EQ(run_output(identity_machine(), x), x[0]);
        EXPECT_EQ(run_output(const_machine(0), x), 0);
        EXPECT_EQ(run_output(const_machine(1), x), 1);
        EXPECT_EQ(run_output(query_echo_machine(), x, kNegate), 1 - x[0]);
    }
}

TEST(TapeMachine, StockMachinesFitTheExhaustiveBounds)
{
    for (const MachineCase& c : stock_machines()) {
        EXPECT_LE(c.machine.time(), 16u) << c.machine.name();
        EXPECT_LE(c.machine.space(), 8u) << c.machine.name();
        for (const Bits& x : c.inputs) EXPECT_NO_THROW(vm_run(c.machine, x, c.oracle, std::uint64_t{0}, false));
    }
}

TEST(TapeMachine, SerializationRoundTripsEveryConfigurationOfARun)
{
    const ConfigurationMachine m = counter10_machine();
    const VmRun run = vm_run(m, parse_bits("11"), kNone, std::uint64_t{0}, true);
    ASSERT_EQ(run.configurations.size(), m.time() + 1u);
    for (const Configuration& c : run.configurations) {
        const Bits s = m.serialize(c);
        EXPECT_EQ(s.size(), m.serialized_bits());
        EXPECT_EQ(m.deserialize(s), c);
    }
    EXPECT_EQ(run.configurations.back().counter, m.time());
}

TEST(TapeMachine, StepRejectsIllegalConfigurations)
{
    const ConfigurationMachine m = parity3_machine();
    Configuration c = m.initial(parse_bits("101"));
    Configuration bad = c;
    bad.state = m.num_states();
    EXPECT_FALSE(m.is_valid(bad));
    EXPECT_THROW(vm_step(m, bad, std::nullopt), Error);
    EXPECT_THROW(vm_step(m, c, std::uint8_t{1}), Error);

    const VmRun run = vm_run(m, parse_bits("101"), kNone, std::uint64_t{0}, false);
    EXPECT_THROW(vm_step(m, run.final_configuration, std::nullopt), Error);

    const ConfigurationMachine echo = query_echo_machine();
    const Configuration q = echo.initial(parse_bits("1"));
    ASSERT_TRUE(echo.in_query_state(q));
    EXPECT_THROW(vm_step(echo, q, std::nullopt), Error);
    EXPECT_EQ(vm_step(echo, q, std::uint8_t{1}).cell(1), 1);
}

TEST(TapeMachine, HaltedConfigurationsIdleUntilT)
{
    const ConfigurationMachine m = and4_sweep_machine();
    const VmRun run = vm_run(m, parse_bits("1111"), kNone, std::uint64_t{0}, true);
    const std::uint32_t h = halting_step(m, parse_bits("1111"));
    ASSERT_LT(h, m.time());
    for (std::uint32_t t = h; t <= m.time(); ++t) {
        Configuration expected = run.configurations[h];
        expected.counter = t;
        EXPECT_EQ(run.configurations[t], expected);
    }
}

TEST(TapeMachine, RejectsMalformedSpecs)
{
    MachineSpec s = parity3_machine().spec();
    s.space = 65;
    EXPECT_THROW(ConfigurationMachine{s}, Error);
    s = parity3_machine().spec();
    s.transitions.pop_back();
    EXPECT_THROW(ConfigurationMachine{s}, Error);
    s = parity3_machine().spec();
    s.input_length = s.space + 1;
    EXPECT_THROW(ConfigurationMachine{s}, Error);
}

TEST(TapeMachine, TwoStateEnumerationOnlyKeepsHaltingMachines)
{
    const auto machines = two_state_machines();
    EXPECT_GT(machines.size(), 1000u);
    for (std::size_t i = 0; i < machines.size(); i += 97) {
        for (const Bits& x : all_inputs(1)) EXPECT_LE(halting_step(machines[i], x), 4u);
    }
}

TEST(TapeMachine, TextFormatRoundTrips)
{
    for (const MachineCase& c : stock_machines()) {
        const std::string text = format_machine(c.machine);
        const ConfigurationMachine back = parse_machine(text);
        EXPECT_EQ(format_machine(back), text);
        for (const Bits& x : c.inputs) EXPECT_EQ(run_output(back, x, c.oracle), run_output(c.machine, x, c.oracle));
    }
}

TEST(TapeMachine, ParseErrorsNameTheLine)
{
    try {
        parse_machine("name m\nstates 2\nstart 0\nhalt 1\nspace 2\ntime 2\ninput 1\n0 0 -> 1 0 X\n");
        FAIL() << "expected a parse error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos) << e.what();
    }
}

TEST(Compile, TraceProgramReproducesEveryDeterministicMachine)
{
    std::size_t checked = 0;
    for (const MachineCase& c : stock_machines()) {
        if (c.machine.time() > 10) continue;
        for (const Bits& x : c.inputs) {
            const StepProgram p = compile_vm_trace(c.machine, x, c.oracle);
            EXPECT_EQ(p.length(), c.machine.time());
            EXPECT_EQ(p.width(), compiled_cell_width(c.machine));
            EXPECT_EQ(sp_run(p, x, c.oracle, std::uint64_t{0}).output, run_output(c.machine, x, c.oracle))
                << c.machine.name() << " " << bits_to_string(x);
            ++checked;
        }
    }
    for (const ConfigurationMachine& m : two_state_machines()) {
        for (const Bits& x : all_inputs(1)) {
            const StepProgram p = compile_vm_trace(m, x);
            ASSERT_EQ(sp_run(p, x, kNone, std::uint64_t{0}).output, run_output(m, x));
            ++checked;
        }
    }
    EXPECT_GT(checked, 2000u);
}

TEST(Compile, ReadSetsAreSmall)
{
    const ConfigurationMachine m = counter10_machine();
    const StepProgram p = compile_vm_trace(m, parse_bits("01"));
    for (std::uint32_t t = 1; t <= p.length(); ++t) EXPECT_LE(p.step(t).reads.size(), 2u);
}

TEST(Compile, RejectsRandomisedOraclesAndMissingOracles)
{
    const auto coin = StochasticOracle::constant(1, UnitRational(1, 2));
    EXPECT_THROW(compile_vm_trace(query_echo_machine(), parse_bits("1"), coin), Error);
    EXPECT_THROW(compile_vm_trace(query_echo_machine(), parse_bits("1")), Error);
}
