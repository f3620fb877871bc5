#include <gtest/gtest.h>

#include <cmath>

#include "debate/oracle.hpp"
#include "debate/stats.hpp"

using namespace debate;

TEST(Wilson, MatchesTheClosedForm)
{
    const double z = wilson_z95;
    for (auto [k, n] : {std::pair{0, 10}, std::pair{3, 10}, std::pair{10, 10}, std::pair{240, 400}}) {
        const double p = double(k) / n;
        const double denom = 1 + z * z / n;
        const double centre = (p + z * z / (2.0 * n)) / denom;
        const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n)) / denom;
        const Interval ci = wilson_interval(k, n);
        EXPECT_NEAR(ci.lo, std::max(0.0, centre - half), 1e-12);
        EXPECT_NEAR(ci.hi, std::min(1.0, centre + half), 1e-12);
    }
    EXPECT_EQ(wilson_interval(0, 0).lo, 0.0);
    EXPECT_EQ(wilson_interval(0, 0).hi, 1.0);
}

TEST(ChiSquare, SurvivalFunctionKnownValues)
{
    // Tabulated critical values: P[X > 3.841] = 0.05 for 1 dof, P[X > 18.307] = 0.05 for 10 dof.
    EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_sf(18.307038053275146, 10), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_sf(2.0, 2), std::exp(-1.0), 1e-12);
}

TEST(ChiSquare, UniformAndTwoSample)
{
    const std::vector<std::uint64_t> flat(8, 100);
    EXPECT_DOUBLE_EQ(chi_square_uniform(flat).statistic, 0.0);
    EXPECT_DOUBLE_EQ(chi_square_uniform(flat).p_value, 1.0);
    const std::vector<std::uint64_t> skew{800, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_LT(chi_square_uniform(skew).p_value, 1e-10);

    const std::vector<std::uint64_t> a{10, 20, 30};
    const std::vector<std::uint64_t> b{20, 40, 60};
    EXPECT_NEAR(chi_square_two_sample(a, b).statistic, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(chi_square_two_sample(a, b).dof, 2.0);
    const std::vector<std::uint64_t> c{60, 20, 10};
    EXPECT_LT(chi_square_two_sample(a, c).p_value, 1e-6);
}

TEST(WilsonCoverage, ExactCoverageIsNearNominal)
{
    const double c = wilson_coverage(1000, 0.5);
    EXPECT_GT(c, 0.93);
    EXPECT_LT(c, 0.97);
    EXPECT_DOUBLE_EQ(wilson_coverage(50, 0.0), 1.0);
}

TEST(SamplingModes, NaiveAndBinomialAgreeInDistribution)
{
    const auto o = StochasticOracle::constant(0, UnitRational(3, 10));
    const std::uint64_t n = 100;
    std::vector<std::uint64_t> naive(n + 1, 0), binomial(n + 1, 0);
    Stream r1(1), r2(2);
    for (int i = 0; i < 5000; ++i) {
        const mpq_class a = o.sample_mean(0, n, r1, SamplingMode::Naive).value() * n;
        const mpq_class b = o.sample_mean(0, n, r2, SamplingMode::Binomial).value() * n;
        ++naive[a.get_num().get_ui()];
        ++binomial[b.get_num().get_ui()];
    }
    // pool the sparse tails
    std::vector<std::uint64_t> pa(3, 0), pb(3, 0);
    for (std::uint64_t k = 0; k <= n; ++k) {
        const std::size_t bin = k < 27 ? 0 : (k <= 33 ? 1 : 2);
        pa[bin] += naive[k];
        pb[bin] += binomial[k];
    }
    EXPECT_GT(chi_square_two_sample(pa, pb).p_value, 0.001);
}
