#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

#include "debate/rational.hpp"

namespace debate {

/// Purpose tags mixed into stream derivation so that every consumer of
/// randomness in a debate draws from its own stream.
enum class StreamRole : std::uint64_t {
    Trial = 1,
    ProverA = 2,
    ProverB = 3,
    Verifier = 4,
    CopyA = 5,
    CopyB = 6,
    Machine = 7,
};

/// Derives a 64-bit key from a master seed and a path of counters.
/// Distinct paths give unrelated keys; the mapping is a pure function.
std::uint64_t derive_key(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seed for trial `index` of an experiment with the given master seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
{
    return derive_key(master, {static_cast<std::uint64_t>(StreamRole::Trial), index});
}

/// Private random stream. A UniformRandomBitGenerator over 64-bit words.
/// The engine is seeded on first draw, so streams handed to purely
/// deterministic computations cost nothing.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) : key_(key) {}

    static Stream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path)
    {
        return Stream(derive_key(master, path));
    }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()()
    {
        if (!engine_) engine_.emplace(key_);
        return (*engine_)();
    }

    UnitFixed uniform_fixed() { return UnitFixed((*this)()); }
    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::optional<std::mt19937_64> engine_;
};

} // namespace debate
