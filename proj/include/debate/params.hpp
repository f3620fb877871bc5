#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "debate/oracle.hpp"
#include "debate/rational.hpp"

namespace debate {

enum class ParamMode { Paper, Scaled };

ParamMode parse_param_mode(const std::string& text);
std::string to_string(ParamMode mode);

/// Constants of the stochastic protocol.
///
///   d = ceil(c_d * K)                          (at least 1)
///   r = ceil(chernoff_coeff * d^2 * verifier_conf)
///   R = ceil(chernoff_coeff * d^2 * ln(prover_conf_base * T))
///
/// Paper mode pins c_d = 150, chernoff_coeff = 192, verifier_conf = ln 100
/// and prover_conf_base = 100. Scaled mode accepts other values and explicit
/// r and R; the 3/5 and 2/5 guarantees are only proven for paper values.
struct ProtocolParams {
    ParamMode mode = ParamMode::Paper;
    std::uint64_t c_d = 150;
    std::uint64_t chernoff_coeff = 192;
    double verifier_conf = 4.605170185988092; // ln 100
    double prover_conf_base = 100.0;
    std::optional<std::uint64_t> r_override;
    std::optional<std::uint64_t> R_override;
    SamplingMode sampling = SamplingMode::Binomial;

    static ProtocolParams paper() { return {}; }
    /// c_d = 5; keeps every formula, shrinks d and the sample counts.
    static ProtocolParams scaled();

    /// Throws BadParameter if paper mode carries non-paper constants.
    void validate() const;
};

struct ResolvedParams {
    std::uint64_t d = 1;
    std::uint64_t r = 1;
    std::uint64_t R = 1;
    double K = 0.0;
    std::uint32_t T = 1;
    SamplingMode sampling = SamplingMode::Binomial;

    /// 1/(4d): the verifier's rejection threshold.
    UnitRational verifier_threshold() const { return UnitRational(1, static_cast<std::int64_t>(4 * d)); }
    /// 1/(2d): honest B's abort threshold.
    UnitRational abort_threshold() const { return UnitRational(1, static_cast<std::int64_t>(2 * d)); }
};

ResolvedParams resolve(const ProtocolParams& params, double K, std::uint32_t T);

} // namespace debate
