#include <gtest/gtest.h>

#include <algorithm>

#include "debate/adversary.hpp"
#include "debate/catalogue.hpp"
#include "debate/compile.hpp"
#include "debate/error.hpp"
#include "debate/harness.hpp"
#include "debate/protocol.hpp"

using namespace debate;

namespace {

const StochasticOracle kNone = StochasticOracle::constant(0, UnitRational::zero());
const StochasticOracle kNegate = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});

DebateOutcome bisect(const ConfigurationMachine& m, const Bits& x, const StochasticOracle& o, const std::string& a,
                     const std::string& b, bool log = false)
{
    auto sa = make_adversary(a);
    auto sb = make_adversary(b);
    return run_bisection(m, x, o, *sa, *sb, 7, RunOptions{log, VerifierFault::None});
}

DebateOutcome cross(const StepProgram& p, const Bits& x, const StochasticOracle& o, const std::string& a,
                    const std::string& b, bool log = false)
{
    auto sa = make_adversary(a);
    auto sb = make_adversary(b);
    return run_crossexam(p, x, o, *sa, *sb, 7, RunOptions{log, VerifierFault::None});
}

std::uint8_t truth(const ConfigurationMachine& m, const Bits& x, const StochasticOracle& o)
{
    return vm_run(m, x, o, std::uint64_t{0}, false).output;
}

std::size_t midpoints(const DebateOutcome& out)
{
    return std::count_if(out.log.begin(), out.log.end(), [](const LogEntry& e) { return e.actor == "A" && e.round > 0; });
}

ConfigurationMachine with_time(const ConfigurationMachine& m, std::uint32_t T)
{
    MachineSpec s = m.spec();
    s.time = T;
    return ConfigurationMachine(s);
}

} // namespace

TEST(Bisection, HonestVerdictIsTheMachineOutput)
{
    for (const MachineCase& c : stock_machines()) {
        for (const Bits& x : c.inputs) {
            const DebateOutcome out = bisect(c.machine, x, c.oracle, "Honest", "Honest");
            EXPECT_EQ(out.verdict, truth(c.machine, x, c.oracle)) << c.machine.name() << " " << bits_to_string(x);
            EXPECT_FALSE(out.forfeit.has_value());
            EXPECT_LE(out.counters.verifier_oracle_queries, 1u);
            EXPECT_LE(out.counters.verifier_configurations_read, ceil_log2(c.machine.time()) + 2u);
        }
    }
}

TEST(Bisection, FullRecursionTakesCeilLog2TRounds)
{
    for (std::uint32_t T : {2u, 3u, 5u, 8u, 9u, 16u}) {
        const ConfigurationMachine m = with_time(identity_machine(), T);
        // b = 1 always keeps the longer half
        const DebateOutcome longest = bisect(m, parse_bits("1"), kNone, "Honest", "FrivolousAccuser b=1", true);
        EXPECT_EQ(midpoints(longest), ceil_log2(T)) << T;
        EXPECT_EQ(longest.verdict, 1) << T;
        EXPECT_EQ(longest.counters.verifier_configurations_read, ceil_log2(T) + 2u);
        const DebateOutcome shortest = bisect(m, parse_bits("1"), kNone, "Honest", "FrivolousAccuser b=0", true);
        EXPECT_LE(midpoints(shortest), ceil_log2(T)) << T;
        EXPECT_GE(midpoints(shortest), ceil_log2(T) - 1) << T;
        EXPECT_EQ(shortest.verdict, 1) << T;
    }
}

TEST(Bisection, TwoStepsUseOneRoundAtStepOne)
{
    const ConfigurationMachine m = with_time(identity_machine(), 2);
    const DebateOutcome out = bisect(m, parse_bits("1"), kNone, "Honest", "FrivolousAccuser b=1", true);
    ASSERT_EQ(midpoints(out), 1u);
    const auto it = std::find_if(out.log.begin(), out.log.end(), [](const LogEntry& e) { return e.actor == "A" && e.round == 1; });
    EXPECT_NE(it->text.find("step=1"), std::string::npos) << it->text;
}

TEST(Bisection, HonestBIsolatesACorruptedMidpoint)
{
    const ConfigurationMachine m = parity3_machine();
    const Bits x = parse_bits("110");
    ASSERT_EQ(truth(m, x, kNone), 0);
    for (std::uint32_t k = 0; k <= m.time(); ++k) {
        for (const std::string forge : {"flip", "resimulate"}) {
            const std::string a = "MidpointCorruptor lie_from=" + std::to_string(k) + " forge=" + forge;
            const DebateOutcome out = bisect(m, x, kNone, a, "Honest", true);
            EXPECT_EQ(out.verdict, 0) << a << "\n" << to_trace(out);
        }
    }
}

TEST(Bisection, MalformedMessagesForfeit)
{
    const ConfigurationMachine m = parity3_machine();
    const DebateOutcome wrong_selector = bisect(m, parse_bits("111"), kNone, "Honest", "WrongReadSet");
    ASSERT_TRUE(wrong_selector.forfeit.has_value());
    EXPECT_EQ(wrong_selector.forfeit->party, Party::B);
    EXPECT_EQ(wrong_selector.verdict, 1);
}

TEST(Bisection, NeedsADeterministicOracle)
{
    const auto coin = StochasticOracle::constant(1, UnitRational(1, 2));
    EXPECT_THROW(bisect(query_echo_machine(), parse_bits("1"), coin, "Honest", "Honest"), Error);
}

TEST(CrossExam, HonestVerdictAndBudgets)
{
    std::vector<std::pair<StepProgram, std::pair<StochasticOracle, std::vector<Bits>>>> subjects;
    for (const MachineCase& c : stock_machines()) {
        for (const Bits& x : c.inputs) subjects.push_back({compile_vm_trace(c.machine, x, c.oracle), {c.oracle, {x}}});
    }
    for (const ProgramCase& c : stock_programs()) subjects.push_back({c.program, {c.oracle, c.inputs}});
    for (const auto& [p, rest] : subjects) {
        const auto& [o, inputs] = rest;
        for (const Bits& x : inputs) {
            const std::uint8_t truth = sp_run(p, x, o, std::uint64_t{0}).output;
            for (const std::string b : {"Honest", "FrivolousAccuser t=1", "NeverAbort"}) {
                const DebateOutcome out = cross(p, x, o, "Honest", b);
                // a B that accuses a correct step concedes, whatever the output
                if (b == "Honest" || truth == 1) EXPECT_EQ(out.verdict, truth) << p.name() << " " << b;
                EXPECT_LE(out.counters.verifier_oracle_queries, 1u);
                const std::uint64_t budget = out.checked_step ? crossexam_bit_budget(p, *out.checked_step) : 1;
                EXPECT_LE(out.counters.verifier_bits_read, budget) << p.name();
            }
        }
    }
}

TEST(CrossExam, BitCountForOneCopyStep)
{
    // single_query_copy: T = 3, w = 1, l = 1. Checking step 2 (reads c1):
    // address 2 + (cell 1 + address 2) + checked cell 1 = 6.
    const StepProgram p = single_query_copy_program();
    const DebateOutcome out = cross(p, parse_bits("1"), kNegate, "TranscriptCorruptor cells=2", "Honest");
    ASSERT_TRUE(out.checked_step.has_value());
    EXPECT_EQ(*out.checked_step, 2u);
    EXPECT_EQ(out.counters.verifier_bits_read, 6u);
    EXPECT_EQ(crossexam_bit_budget(p, 2), 6u);
    EXPECT_EQ(out.counters.verifier_oracle_queries, 0u);
    EXPECT_EQ(out.verdict, 0);
}

TEST(CrossExam, HonestBNamesTheEarliestCorruptedStep)
{
    const ConfigurationMachine m = counter10_machine();
    const Bits x = parse_bits("10");
    const StepProgram p = compile_vm_trace(m, x);
    ASSERT_EQ(sp_run(p, x, kNone, std::uint64_t{0}).output, 0);
    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        for (const std::string consistent : {"0", "1"}) {
            const std::string a = "TranscriptCorruptor cells=" + std::to_string(t) + " consistent=" + consistent;
            const DebateOutcome out = cross(p, x, kNone, a, "Honest");
            EXPECT_EQ(out.verdict, 0) << a;
            ASSERT_TRUE(out.checked_step.has_value()) << a;
            EXPECT_EQ(*out.checked_step, t) << a;
        }
    }
}

TEST(CrossExam, WrongReadSetForfeits)
{
    const StepProgram p = majority3_program();
    const auto det = StochasticOracle::constant(1, UnitRational::one());
    const DebateOutcome out = cross(p, parse_bits("1"), det, "Honest", "WrongReadSet t=4");
    ASSERT_TRUE(out.forfeit.has_value());
    EXPECT_EQ(out.forfeit->party, Party::B);
    EXPECT_EQ(out.verdict, 1);
}

TEST(CrossExam, ClaimingAcceptanceWithoutAnErrorIsCaught)
{
    const StepProgram p = compile_vm_trace(parity3_machine(), parse_bits("011"));
    const DebateOutcome out = cross(p, parse_bits("011"), kNone, "LyingFinalBit", "Honest");
    EXPECT_EQ(out.verdict, 0);
    EXPECT_EQ(*out.checked_step, p.length());
}

TEST(Protocols, OutcomesReplayFromTheSeed)
{
    Subject s;
    s.protocol = ProtocolId::Stochastic;
    s.program = majority3_program();
    s.oracle = StochasticOracle::constant(1, UnitRational(1, 2));
    s.x = parse_bits("1");
    s.params = ProtocolParams::scaled();
    RunOptions opts;
    opts.record_log = true;
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        const auto first = run_debate(s, AdversarySpec::parse("Honest"), AdversarySpec::parse("AlwaysAbort t=2"), seed, opts);
        const auto again = run_debate(s, AdversarySpec::parse("Honest"), AdversarySpec::parse("AlwaysAbort t=2"), seed, opts);
        EXPECT_EQ(first, again);
        EXPECT_EQ(to_record(first), to_record(again));
        EXPECT_EQ(first.seed, seed);
    }
}

TEST(Witness, SubsetSumAcceptsExactlyWhenAMaskExists)
{
    const StepProgram p = subset_sum_verifier({3, 5, 6, 9}, 5);
    const auto approve = StochasticOracle::constant(4, UnitRational::one());
    const std::vector<std::uint32_t> weights{3, 5, 6, 9};
    for (std::uint32_t target = 0; target < 32; ++target) {
        bool exists = false;
        for (std::uint32_t mask = 0; mask < 16; ++mask) {
            std::uint32_t sum = 0;
            for (std::uint32_t i = 0; i < 4; ++i) sum += ((mask >> i) & 1u) ? weights[i] : 0;
            exists |= sum == target;
        }
        const Bits x = index_to_bits(target, 5);
        Bits le(x.rbegin(), x.rend());
        auto a = make_adversary("Honest");
        auto b = make_adversary("Honest");
        const DebateOutcome out = run_witness(WitnessMode::Det, p, le, 4, approve, *a, *b, ProtocolParams::paper(), 3);
        EXPECT_EQ(out.verdict, exists ? 1 : 0) << target;
    }
}

TEST(Witness, WrongLengthForfeits)
{
    const StepProgram p = subset_sum_verifier({3, 5, 6, 9}, 5);
    auto a = make_adversary("BadWitness witness=101");
    auto b = make_adversary("Honest");
    const auto approve = StochasticOracle::constant(4, UnitRational::one());
    const DebateOutcome out =
        run_witness(WitnessMode::Det, p, parse_bits("01110"), 4, approve, *a, *b, ProtocolParams::paper(), 3);
    ASSERT_TRUE(out.forfeit.has_value());
    EXPECT_EQ(out.forfeit->party, Party::A);
    EXPECT_EQ(out.verdict, 0);
}
