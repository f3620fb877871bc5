#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace debate {

inline constexpr double wilson_z95 = 1.959963984540054;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Wilson score interval for successes out of trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = wilson_z95);

/// Upper-tail probability P[X >= stat] for X ~ chi-square(dof).
double chi_square_sf(double stat, double dof);

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Goodness of fit of observed counts against equal expected counts.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> observed);

/// Two-sample homogeneity test over matching bins; bins empty in both
/// samples are dropped.
ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Probability that the Wilson interval for Binomial(n, p) covers p, summed exactly over outcomes.
double wilson_coverage(std::uint64_t n, double p, double z = wilson_z95);

} // namespace debate
