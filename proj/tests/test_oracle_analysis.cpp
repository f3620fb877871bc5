#include <gtest/gtest.h>

#include <cmath>

#include "debate/builder.hpp"
#include "debate/catalogue.hpp"
#include "debate/error.hpp"
#include "debate/oracle_analysis.hpp"

using namespace debate;

namespace {

UnitRational q(std::int64_t n, std::int64_t d) { return UnitRational(n, d); }

// P[majority of three independent p-coins] by listing the eight outcomes.
mpq_class majority_by_outcomes(const mpq_class& p)
{
    mpq_class total = 0;
    for (int v = 0; v < 8; ++v) {
        const int ones = (v & 1) + ((v >> 1) & 1) + ((v >> 2) & 1);
        mpq_class w = 1;
        for (int i = 0; i < 3; ++i) w *= ((v >> i) & 1) ? p : mpq_class(1 - p);
        if (ones >= 2) total += w;
    }
    return total;
}

} // namespace

TEST(ExactOutputProb, SingleQueryReturnsTheOracleBias)
{
    const auto o = StochasticOracle::table(1, {q(1, 3), q(9, 10)});
    EXPECT_EQ(exact_output_prob(single_query_program(), parse_bits("1"), o), q(9, 10));
    EXPECT_EQ(exact_output_prob(single_query_program(), parse_bits("0"), o), q(1, 3));
    EXPECT_EQ(exact_output_prob(single_query_copy_program(), parse_bits("1"), o), q(9, 10));
}

TEST(ExactOutputProb, MajorityOfThree)
{
    const StepProgram p = majority3_program();
    EXPECT_EQ(exact_output_prob(p, parse_bits("1"), StochasticOracle::constant(1, q(9, 10))), q(972, 1000));
    EXPECT_EQ(exact_output_prob(p, parse_bits("1"), StochasticOracle::constant(1, q(1, 2))), q(1, 2));
    for (int k = 0; k <= 20; ++k) {
        const UnitRational pk = q(k, 20);
        EXPECT_EQ(exact_output_prob(p, parse_bits("0"), StochasticOracle::constant(1, pk)).value(),
                  majority_by_outcomes(pk.value()));
    }
}

TEST(ExactOutputProb, ConstantProgramsAreExact)
{
    const auto o = StochasticOracle::constant(0, UnitRational::zero());
    EXPECT_EQ(exact_output_prob(constant_program(0), parse_bits("0"), o), UnitRational::zero());
    EXPECT_EQ(exact_output_prob(constant_program(1), parse_bits("0"), o), UnitRational::one());
}

TEST(ExactOutputProb, SubsetSumIsTheApprovalOfTheMatchingMask)
{
    std::vector<UnitRational> approval;
    for (int i = 0; i < 16; ++i) approval.push_back(q(i, 15));
    const auto o = StochasticOracle::table(4, approval);
    const StepProgram p = subset_sum_verifier({3, 5, 6, 9}, 5);
    // target 14 little-endian, mask 0101 selects 5 and 9
    EXPECT_EQ(exact_output_prob(p, parse_bits("01110" "0101"), o), q(5, 15));
    EXPECT_EQ(exact_output_prob(p, parse_bits("01110" "0110"), o), UnitRational::zero());
}

TEST(ExactOutputProb, RefusesMoreThanTwentyQuerySteps)
{
    ProgramBuilder b("many", 1, 1);
    CellRef last = b.input(0);
    for (int i = 0; i < 21; ++i) last = b.query({b.input(0)});
    b.gate(Gate::Copy, {last});
    const StepProgram p = std::move(b).build(std::nullopt);
    EXPECT_THROW(exact_output_prob(p, parse_bits("1"), StochasticOracle::constant(1, q(1, 2))), Error);
    try {
        exact_output_prob(p, parse_bits("1"), StochasticOracle::constant(1, q(1, 2)));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLargeToEnumerate);
    }
}

TEST(EstimateLipschitz, MatchesKnownConstants)
{
    const UnitRational delta = q(1, 1000);
    const auto none = StochasticOracle::constant(1, q(1, 2));
    EXPECT_EQ(estimate_lipschitz(constant_program(1), parse_bits("0"), none, delta), 0.0);
    EXPECT_NEAR(estimate_lipschitz(single_query_program(), parse_bits("1"), StochasticOracle::constant(1, q(9, 10)), delta),
                1.0, 0.01);
    const double k_maj = estimate_lipschitz(majority3_program(), parse_bits("1"), none, delta);
    EXPECT_NEAR(k_maj, 1.5, 0.05);
    EXPECT_LE(k_maj, 1.5);
}

TEST(EstimateLipschitz, NeverExceedsDeclaredConstants)
{
    const UnitRational delta = q(1, 1000);
    for (const ProgramCase& c : stock_programs()) {
        if (!c.known_K) continue;
        for (std::size_t i = 0; i < c.inputs.size(); i += std::max<std::size_t>(1, c.inputs.size() / 8)) {
            EXPECT_LE(estimate_lipschitz(c.program, c.inputs[i], c.oracle, delta), *c.known_K + 1e-12)
                << c.program.name();
        }
    }
    for (int k = 1; k < 10; ++k) {
        const auto o = StochasticOracle::constant(1, q(k, 10));
        EXPECT_LE(estimate_lipschitz(majority3_program(), parse_bits("1"), o, delta), 1.5);
    }
}
