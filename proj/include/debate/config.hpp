#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "debate/harness.hpp"

namespace debate {

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<ParamMode> mode;
    std::optional<std::string> out_dir;
    bool trace = false;
};

/// Experiment file: one "key = value" per line, '#' comments. Keys:
///
///   protocol        bisection | crossexam | stochastic | witness-det | witness-stoch
///   machine         tape machine reference (bisection, crossexam)
///   program         step program reference (crossexam, stochastic, witness)
///   oracle          oracle reference, or inline "constant <l> <p>" / "table <l> p..."
///   input           input bits (may be empty)
///   witness_length  witness bits appended by A in the witness protocols
///   A, B            adversary specs ("Honest", "ShiftedAnnouncer t=1 delta=1/4", ...)
///   family          one adversary per line (repeatable), swept on family_side
///   family_side     A | B
///   matrix_a, matrix_b  strategies for the payoff matrix (repeatable)
///   trials, seed, threads
///   mode            paper | scaled   (scaled defaults c_d to 5)
///   c_d, chernoff_coeff, verifier_conf, prover_conf_base, r, R
///   sampling        binomial | naive
///   delta           perturbation for the lipschitz command
///   out             output directory
///   trace           true | false
///   expect_min      acceptance lower bound the result must clear (exit 1 otherwise)
///   expect_max      acceptance upper bound the result must stay under
///
/// References are "catalogue:<name>" or paths relative to the config file.
/// Unknown keys and malformed values are errors that name the line.
struct LoadedConfig {
    ExperimentConfig experiment;
    std::string delta = "1/1000";
    std::optional<UnitRational> expect_min;
    std::optional<UnitRational> expect_max;
};

LoadedConfig parse_config(std::string_view text, const std::string& base_dir, const ConfigOverrides& overrides = {});
LoadedConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

} // namespace debate
