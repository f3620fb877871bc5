#include <gtest/gtest.h>

#include <algorithm>

#include "debate/catalogue.hpp"
#include "debate/error.hpp"
#include "debate/harness.hpp"
#include "debate/report.hpp"

using namespace debate;

namespace {

Subject majority_subject(const UnitRational& p)
{
    Subject s;
    s.protocol = ProtocolId::Stochastic;
    s.program = majority3_program();
    s.oracle = StochasticOracle::constant(1, p);
    s.x = parse_bits("1");
    s.params = ProtocolParams::scaled();
    return s;
}

Subject parity_subject(const std::string& x)
{
    Subject s;
    s.protocol = ProtocolId::Bisection;
    s.machine = parity3_machine();
    s.x = parse_bits(x);
    return s;
}

const AdversarySpec kHonest = AdversarySpec::parse("Honest");

} // namespace

TEST(Harness, EstimatesDoNotDependOnThreadCount)
{
    const Subject s = majority_subject(UnitRational(7, 10));
    const auto b = AdversarySpec::parse("AlwaysAbort t=2");
    const AcceptanceEstimate one = estimate_acceptance(s, kHonest, b, 300, 42, 1);
    const AcceptanceEstimate three = estimate_acceptance(s, kHonest, b, 300, 42, 3);
    EXPECT_EQ(one.successes, three.successes);
    EXPECT_EQ(one.aborts, three.aborts);
    EXPECT_EQ(one.means.verifier_oracle_queries, three.means.verifier_oracle_queries);
    EXPECT_EQ(estimates_csv({one}), estimates_csv({three}));
    EXPECT_EQ(one.trials, 300u);
    EXPECT_EQ(one.aborts, 300u);
}

TEST(Harness, EstimateIsAWilsonInterval)
{
    const Subject s = majority_subject(UnitRational(1, 2));
    const AcceptanceEstimate e = estimate_acceptance(s, kHonest, kHonest, 400, 1, 1);
    EXPECT_DOUBLE_EQ(e.estimate, double(e.successes) / 400);
    const Interval ci = wilson_interval(e.successes, 400);
    EXPECT_DOUBLE_EQ(e.ci.lo, ci.lo);
    EXPECT_DOUBLE_EQ(e.ci.hi, ci.hi);
    EXPECT_TRUE(e.ci.contains(0.5)) << e.ci.lo << " " << e.ci.hi;
}

TEST(Harness, TrialErrorsAreCountedNotThrown)
{
    Subject s = majority_subject(UnitRational(1, 2));
    s.x = parse_bits("10");
    const AcceptanceEstimate e = estimate_acceptance(s, kHonest, kHonest, 5, 1, 1);
    EXPECT_EQ(e.errors, 5u);
    EXPECT_EQ(e.trials, 0u);
    EXPECT_FALSE(e.first_error.empty());
}

TEST(Harness, ConfigVariantNeedsASeed)
{
    ExperimentConfig cfg;
    cfg.subject = majority_subject(UnitRational(1, 2));
    EXPECT_THROW(estimate_acceptance(cfg), Error);
    cfg.seed = 3;
    EXPECT_NO_THROW(estimate_acceptance(cfg));
}

TEST(Harness, DeterministicMatrixIsExact)
{
    const PayoffMatrix m = payoff_matrix(parity_subject("110"), {kHonest}, {kHonest}, 3, 1, 1);
    ASSERT_EQ(m.cells.size(), 1u);
    EXPECT_EQ(m.payoff_a(0, 0), 0.0);
    const PayoffMatrix yes = payoff_matrix(parity_subject("100"), {kHonest}, {kHonest}, 3, 1, 1);
    EXPECT_EQ(yes.payoff_a(0, 0), 1.0);
}

TEST(Harness, MatrixPayoffsAreZeroSumAndBestResponsesAreExtremal)
{
    const std::vector<AdversarySpec> as{kHonest, AdversarySpec::parse("ShiftedAnnouncer t=0 delta=1/4 dir=-1")};
    const std::vector<AdversarySpec> bs{kHonest, AdversarySpec::parse("NeverAbort"), AdversarySpec::parse("AlwaysAbort t=1")};
    const PayoffMatrix m = payoff_matrix(majority_subject(UnitRational(9, 10)), as, bs, 100, 5, 1);
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = 0; j < bs.size(); ++j) {
            EXPECT_DOUBLE_EQ(m.payoff_a(i, j) + m.payoff_b(i, j), 1.0);
            EXPECT_LE(m.payoff_a(i, m.best_response_b[i]), m.payoff_a(i, j));
            EXPECT_GE(m.payoff_a(m.best_response_a[j], j), m.payoff_a(i, j));
        }
    }
}

TEST(Harness, SweepReportsTheFamilyExtreme)
{
    const std::vector<AdversarySpec> family{kHonest, AdversarySpec::parse("LyingFinalBit"),
                                            AdversarySpec::parse("ShiftedAnnouncer t=0 delta=1/2")};
    const SweepResult r = adversary_sweep(majority_subject(UnitRational(1, 10)), kHonest, Party::A, family, 100, 9, 1);
    ASSERT_TRUE(r.extreme.has_value());
    EXPECT_EQ(r.objective, Objective::Max);
    for (const SweepRow& row : r.rows) EXPECT_LE(row.estimate.estimate, r.rows[*r.extreme].estimate.estimate);
    const SweepResult rb = adversary_sweep(majority_subject(UnitRational(9, 10)), kHonest, Party::B, family, 100, 9, 1);
    EXPECT_EQ(rb.objective, Objective::Min);
    for (const SweepRow& row : rb.rows) EXPECT_GE(row.estimate.estimate, rb.rows[*rb.extreme].estimate.estimate);
}

TEST(Exhaustive, SmallSetHasNoCounterexamples)
{
    std::vector<MachineEntry> machines;
    for (const MachineCase& c : stock_machines()) machines.push_back({c.machine, c.oracle, c.inputs});
    std::vector<ProgramEntry> programs;
    for (const ProgramCase& c : stock_programs()) programs.push_back({c.program, c.oracle, c.inputs});
    const ExhaustiveReport r = exhaustive_soundness_check(machines, programs);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.accepted_in, r.runs_in);
    EXPECT_EQ(r.accepted_out, 0u);
    EXPECT_EQ(r.budget_violations, 0u);
    EXPECT_GT(r.runs_out, 1000u);
}

TEST(Exhaustive, DetectsAVerifierThatSkipsItsFinalCheck)
{
    std::vector<MachineEntry> machines{{parity3_machine(), StochasticOracle::constant(0, UnitRational::zero()), all_inputs(3)}};
    ExhaustiveOptions opts;
    opts.fault = VerifierFault::SkipFinalCheck;
    const ExhaustiveReport r = exhaustive_soundness_check(machines, {}, opts);
    EXPECT_FALSE(r.ok());
    ASSERT_FALSE(r.counterexamples.empty());
    const Counterexample& c = r.counterexamples.front();
    EXPECT_EQ(c.expected, 0);
    EXPECT_EQ(c.outcome.verdict, 1);
    EXPECT_FALSE(c.outcome.log.empty());

    opts.throw_on_counterexample = true;
    try {
        exhaustive_soundness_check(machines, {}, opts);
        FAIL() << "expected CounterexampleFound";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CounterexampleFound);
    }
}

TEST(Exhaustive, RejectsMachinesOverTheSizeLimits)
{
    MachineSpec s = identity_machine().spec();
    s.time = 17;
    std::vector<MachineEntry> machines{{ConfigurationMachine(s), StochasticOracle::constant(0, UnitRational::zero()), all_inputs(1)}};
    EXPECT_THROW(exhaustive_soundness_check(machines, {}), Error);
}

TEST(Exhaustive, FamiliesCoverEveryRoundAndMidpoint)
{
    const ConfigurationMachine m = parity3_machine();
    const auto a = bisection_a_family(m);
    for (std::uint32_t j = 0; j <= m.time(); ++j) {
        const std::string key = "lie_from";
        EXPECT_TRUE(std::any_of(a.begin(), a.end(), [&](const AdversarySpec& s) {
            return s.has(key) && s.get(key) == std::to_string(j);
        })) << j;
    }
    const auto b = bisection_b_family(m);
    std::size_t fixed = std::count_if(b.begin(), b.end(), [](const AdversarySpec& s) { return s.family == "FixedSelectors"; });
    EXPECT_EQ(fixed, 9u); // {0, 1, c}^2 for T = 4
}
