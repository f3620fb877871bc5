#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "debate/random.hpp"
#include "debate/rational.hpp"

namespace debate {

enum class SamplingMode { Naive, Binomial };

/// Maps queries z in {0,1}^l to P[O(z) = 1]. Either an explicit table
/// (l <= 20) or a constant rule that answers every query alike.
class StochasticOracle {
public:
    static constexpr std::uint32_t max_table_length = 20;

    static StochasticOracle table(std::uint32_t length, std::vector<UnitRational> probabilities);
    static StochasticOracle constant(std::uint32_t length, const UnitRational& p);

    std::uint32_t query_length() const noexcept { return length_; }
    bool tabulated() const noexcept { return tabulated_; }

    /// Probability for a query index (big-endian packed bits).
    const UnitRational& probability(std::uint64_t query) const { return entry(query).p; }
    bool is_deterministic() const;

    std::uint8_t sample(std::uint64_t query, Stream& rng) const;
    UnitRational sample_mean(std::uint64_t query, std::uint64_t n, Stream& rng, SamplingMode mode) const;

    /// Explicit-table form of this oracle. TooLargeToEnumerate for l > 20.
    StochasticOracle tabulate() const;
    /// Tabulated copy with one entry replaced.
    StochasticOracle with_probability(std::uint64_t query, const UnitRational& p) const;

    std::string describe() const;

private:
    struct Entry {
        UnitRational p;
        std::uint64_t threshold = 0; // floor(p * 2^64)
        bool certain = false;        // p == 1
        double approx = 0.0;
    };

    static Entry make_entry(const UnitRational& p);
    const Entry& entry(std::uint64_t query) const;

    std::uint32_t length_ = 0;
    bool tabulated_ = false;
    std::vector<Entry> entries_;
};

std::uint8_t oracle_sample(const StochasticOracle& o, std::span<const std::uint8_t> z, Stream& rng);

/// k/n with k ~ Binomial(n, o(z)). Binomial mode draws k in one shot.
UnitRational sample_mean(const StochasticOracle& o, std::span<const std::uint8_t> z, std::uint64_t n,
                         Stream& rng, SamplingMode mode);

/// max_z |o1(z) - o2(z)| over all 2^l queries.
UnitRational oracle_distance(const StochasticOracle& o1, const StochasticOracle& o2);

} // namespace debate
