#pragma once

#include <optional>
#include <string>
#include <vector>

#include "debate/harness.hpp"

namespace debate {

/// CSV columns, one row per estimate:
///   label,requested,trials,successes,estimate,ci_lo,ci_hi,forfeits_a,forfeits_b,aborts,errors,
///   mean_verifier_oracle_queries,mean_verifier_bits_read,mean_verifier_configurations_read,
///   mean_proverA_steps,mean_proverB_steps,mean_proverA_oracle_samples,mean_proverB_oracle_samples,
///   max_verifier_oracle_queries,max_verifier_bits_read
std::string estimates_csv(const std::vector<AcceptanceEstimate>& rows);

/// Matrix as CSV with row and column indices prepended to the estimate columns.
std::string matrix_csv(const PayoffMatrix& m);

/// JSON documents. Every estimate object carries the CSV fields under the
/// same names (means nested under "means").
std::string estimate_json(const AcceptanceEstimate& e, const std::string& command, std::uint64_t seed);
std::string sweep_json(const SweepResult& s, std::uint64_t seed);
std::string matrix_json(const PayoffMatrix& m, std::uint64_t seed);
std::string exhaustive_json(const ExhaustiveReport& r);
std::string lipschitz_json(const std::string& program, const std::string& delta, double estimate,
                           const std::optional<double>& declared);
std::string exhaustive_csv(const ExhaustiveReport& r);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json, creating dir.
void write_report(const std::string& dir, const std::string& stem, const std::string& csv, const std::string& json);

} // namespace debate
