#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "debate/bits.hpp"
#include "debate/error.hpp"
#include "debate/oracle.hpp"
#include "debate/random.hpp"
#include "debate/rational.hpp"

using namespace debate;

namespace {

UnitRational q(std::int64_t n, std::int64_t d) { return UnitRational(n, d); }

} // namespace

TEST(Bits, ParseAndIndexRoundTrip)
{
    EXPECT_EQ(parse_bits(""), Bits{});
    EXPECT_EQ(parse_bits("0110"), (Bits{0, 1, 1, 0}));
    EXPECT_THROW(parse_bits("012"), Error);
    for (std::uint64_t i = 0; i < 32; ++i) {
        const Bits b = index_to_bits(i, 5);
        EXPECT_EQ(bits_to_index(b), i);
        EXPECT_EQ(parse_bits(bits_to_string(b)), b);
    }
    EXPECT_EQ(bits_to_index(parse_bits("100")), 4u);
}

TEST(Bits, CeilLog2)
{
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(2), 1u);
    EXPECT_EQ(ceil_log2(3), 2u);
    EXPECT_EQ(ceil_log2(16), 4u);
    EXPECT_EQ(ceil_log2(17), 5u);
}

TEST(UnitRational, RejectsValuesOutsideTheUnitInterval)
{
    EXPECT_THROW(q(3, 2), Error);
    EXPECT_THROW(q(-1, 4), Error);
    EXPECT_THROW(q(1, 0), Error);
    EXPECT_THROW(UnitRational::parse("1.5"), Error);
    EXPECT_NO_THROW(q(0, 7));
    EXPECT_NO_THROW(q(7, 7));
}

TEST(UnitRational, ParsesFractionsAndDecimals)
{
    EXPECT_EQ(UnitRational::parse("3/10"), q(3, 10));
    EXPECT_EQ(UnitRational::parse("0.3"), q(3, 10));
    EXPECT_EQ(UnitRational::parse(" .25 "), q(1, 4));
    EXPECT_EQ(UnitRational::parse("1"), UnitRational::one());
    EXPECT_EQ(q(2, 4).str(), "1/2");
    EXPECT_THROW(UnitRational::parse("a/b"), Error);
    EXPECT_THROW(UnitRational::parse("1/0"), Error);
}

TEST(UnitRational, ComparisonIsExact)
{
    // 1/3 and its nearest double differ; the comparison must not.
    EXPECT_LT(q(333333333, 1000000000), q(1, 3));
    EXPECT_EQ(q(2, 6), q(1, 3));
    EXPECT_EQ(abs_diff(q(1, 10), q(4, 10)), q(3, 10));
    EXPECT_EQ(abs_diff(q(4, 10), q(1, 10)), q(3, 10));
}

TEST(UnitRational, ShiftClipsToTheUnitInterval)
{
    EXPECT_EQ(shift_clipped(q(9, 10), mpq_class(1, 4)), UnitRational::one());
    EXPECT_EQ(shift_clipped(q(1, 10), mpq_class(-1, 4)), UnitRational::zero());
    EXPECT_EQ(shift_clipped(q(1, 2), mpq_class(1, 4)), q(3, 4));
}

TEST(UnitFixed, AdditionWrapsModuloOne)
{
    const UnitFixed a = UnitFixed::from_rational(mpq_class(3, 4));
    const UnitFixed b = UnitFixed::from_rational(mpq_class(1, 2));
    EXPECT_EQ(mod1_add(a, b), UnitFixed::from_rational(mpq_class(1, 4)));
    EXPECT_EQ(mod1_add(UnitFixed(~std::uint64_t{0}), UnitFixed(1)), UnitFixed(0));
    EXPECT_DOUBLE_EQ(UnitFixed::from_rational(mpq_class(1, 4)).to_double(), 0.25);
}

TEST(UnitFixed, AtMostComparesExactly)
{
    const UnitFixed half = UnitFixed::from_rational(mpq_class(1, 2));
    EXPECT_TRUE(half.at_most(q(1, 2)));
    EXPECT_FALSE(UnitFixed(half.raw() + 1).at_most(q(1, 2)));
    EXPECT_TRUE(UnitFixed(0).at_most(UnitRational::zero()));
    EXPECT_TRUE(UnitFixed(~std::uint64_t{0}).at_most(UnitRational::one()));
}

TEST(Stream, DerivationIsDeterministicAndSeparatesPaths)
{
    Stream a = Stream::derive(42, {1, 2});
    Stream b = Stream::derive(42, {1, 2});
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
    std::set<std::uint64_t> keys;
    for (std::uint64_t m : {0ull, 1ull, 42ull}) {
        for (std::uint64_t i = 0; i < 50; ++i) keys.insert(trial_seed(m, i));
        keys.insert(derive_key(m, {static_cast<std::uint64_t>(StreamRole::ProverA), 0}));
        keys.insert(derive_key(m, {static_cast<std::uint64_t>(StreamRole::ProverB), 0}));
    }
    EXPECT_EQ(keys.size(), 3u * 52u);
    EXPECT_NE(derive_key(1, {2, 3}), derive_key(1, {3, 2}));
}

TEST(StochasticOracle, DistanceIsTheSupremumOverQueries)
{
    const auto o1 = StochasticOracle::table(2, {q(1, 10), q(1, 2), q(1, 2), q(0, 1)});
    const auto o2 = StochasticOracle::table(2, {q(4, 10), q(1, 2), q(2, 5), q(0, 1)});
    EXPECT_EQ(oracle_distance(o1, o2), q(3, 10));
    EXPECT_EQ(oracle_distance(o1, o1), UnitRational::zero());
    const auto c = StochasticOracle::constant(2, q(1, 10));
    EXPECT_EQ(oracle_distance(c, StochasticOracle::constant(2, q(4, 10))), q(3, 10));
    EXPECT_THROW(oracle_distance(o1, StochasticOracle::constant(1, q(1, 2))), Error);
}

TEST(StochasticOracle, TableNeedsOneEntryPerQuery)
{
    EXPECT_THROW(StochasticOracle::table(2, {q(1, 2)}), Error);
    EXPECT_THROW(StochasticOracle::table(21, {}), Error);
    const auto o = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});
    EXPECT_TRUE(o.is_deterministic());
    EXPECT_FALSE(StochasticOracle::constant(1, q(1, 2)).is_deterministic());
}

TEST(StochasticOracle, DeterministicEntriesNeverFlip)
{
    const auto o = StochasticOracle::table(1, {UnitRational::one(), UnitRational::zero()});
    Stream rng(9);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(o.sample(0, rng), 1);
        EXPECT_EQ(o.sample(1, rng), 0);
    }
    EXPECT_EQ(o.sample_mean(0, 1000, rng, SamplingMode::Binomial), UnitRational::one());
    EXPECT_EQ(o.sample_mean(1, 1000, rng, SamplingMode::Naive), UnitRational::zero());
}

TEST(StochasticOracle, SampleMeanMatchesTheBiasInBothModes)
{
    const auto o = StochasticOracle::constant(3, q(3, 10));
    for (SamplingMode mode : {SamplingMode::Naive, SamplingMode::Binomial}) {
        Stream rng(5);
        const double m = o.sample_mean(5, 200000, rng, mode).to_double();
        // five standard deviations of the mean
        EXPECT_NEAR(m, 0.3, 5 * std::sqrt(0.21 / 200000));
    }
}

TEST(StochasticOracle, ChernoffBoundHolds)
{
    // P[|mean - p| >= s] <= 2 exp(-s^2 N / 3), checked empirically at N = 1000, s = 0.1.
    const double s = 0.1;
    const std::uint64_t n = 1000;
    const double bound = 2 * std::exp(-s * s * n / 3);
    EXPECT_NEAR(bound, 0.0714, 1e-4);
    for (const UnitRational& p : {q(1, 2), q(1, 10), q(9, 10)}) {
        const auto o = StochasticOracle::constant(0, p);
        Stream rng(77);
        int deviations = 0;
        const int reps = 10000;
        for (int i = 0; i < reps; ++i) {
            const double m = o.sample_mean(0, n, rng, SamplingMode::Naive).to_double();
            if (std::abs(m - p.to_double()) >= s) ++deviations;
        }
        EXPECT_LE(double(deviations) / reps, bound) << p.str();
    }
}

TEST(StochasticOracle, DistanceIsAMetricOnTables)
{
    std::mt19937_64 gen(11);
    const auto random_table = [&] {
        std::vector<UnitRational> ps;
        for (int i = 0; i < 8; ++i) ps.push_back(q(static_cast<std::int64_t>(gen() % 101), 100));
        return StochasticOracle::table(3, ps);
    };
    for (int i = 0; i < 200; ++i) {
        const auto a = random_table();
        const auto b = random_table();
        const auto c = random_table();
        const mpq_class ab = oracle_distance(a, b).value();
        EXPECT_EQ(ab, oracle_distance(b, a).value());
        EXPECT_LE(oracle_distance(a, c).value(), ab + oracle_distance(b, c).value());
        EXPECT_TRUE(oracle_distance(a, a).is_zero());
    }
}

TEST(StochasticOracle, SampleByBitString)
{
    const auto o = StochasticOracle::table(2, {q(0, 1), q(0, 1), q(1, 1), q(0, 1)});
    Stream rng(3);
    EXPECT_EQ(oracle_sample(o, parse_bits("10"), rng), 1);
    EXPECT_EQ(oracle_sample(o, parse_bits("01"), rng), 0);
    EXPECT_THROW(oracle_sample(o, parse_bits("1"), rng), Error);
}
