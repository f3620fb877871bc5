#include "debate/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "debate/error.hpp"

namespace debate {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw Error(ErrorCode::BadParameter, "more successes than trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    if (successes == 0) out.lo = 0.0;
    if (successes == trials) out.hi = 1.0;
    return out;
}

double chi_square_sf(double stat, double dof)
{
    if (!(dof > 0)) throw Error(ErrorCode::BadParameter, "chi-square needs positive degrees of freedom");
    if (stat <= 0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(dof), stat));
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> observed)
{
    if (observed.size() < 2) throw Error(ErrorCode::BadParameter, "chi-square needs at least two bins");
    const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
    const double expected = total / static_cast<double>(observed.size());
    ChiSquare out;
    for (std::uint64_t o : observed) {
        const double d = static_cast<double>(o) - expected;
        out.statistic += d * d / expected;
    }
    out.dof = static_cast<double>(observed.size() - 1);
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    if (a.size() != b.size()) throw Error(ErrorCode::BadParameter, "samples must share bins");
    const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
    const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
    if (na == 0 || nb == 0) throw Error(ErrorCode::BadParameter, "empty sample");
    ChiSquare out;
    std::size_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double row = static_cast<double>(a[i] + b[i]);
        if (row == 0) continue;
        ++used;
        const double ea = row * na / (na + nb);
        const double eb = row * nb / (na + nb);
        out.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    if (used < 2) return out;
    out.dof = static_cast<double>(used - 1);
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

double wilson_coverage(std::uint64_t n, double p, double z)
{
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    double covered = 0.0;
    for (std::uint64_t k = 0; k <= n; ++k) {
        if (wilson_interval(k, n, z).contains(p)) covered += boost::math::pdf(dist, static_cast<double>(k));
    }
    return covered;
}

} // namespace debate
