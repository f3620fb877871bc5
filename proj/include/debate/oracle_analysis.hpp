#pragma once

#include <cstdint>
#include <span>

#include "debate/oracle.hpp"
#include "debate/step_program.hpp"

namespace debate {

inline constexpr std::uint32_t max_enumerated_queries = 20;

/// P[p^o(x) = 1], computed exactly by branching on every Query step.
/// Throws TooLargeToEnumerate when p has more than 20 Query steps.
UnitRational exact_output_prob(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o);

/// Lower estimate of the smallest K with |P_o'[1] - P_o[1]| <= K * ||o' - o||.
/// Tries o' = o with one reachable query shifted by +-delta, and o' = o with
/// every query shifted by +-delta, all clipped to [0, 1].
double estimate_lipschitz(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                          const UnitRational& delta);

} // namespace debate
