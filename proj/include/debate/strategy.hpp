#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "debate/message.hpp"
#include "debate/oracle.hpp"
#include "debate/params.hpp"
#include "debate/step_program.hpp"
#include "debate/tape_machine.hpp"

namespace debate {

struct BisectionView {
    const ConfigurationMachine& m;
    std::span<const std::uint8_t> x;
    const StochasticOracle& o;
};

/// Interval [lo, hi] of round k, with A's configurations at both ends and,
/// once A has spoken, at mid.
struct BisectionRound {
    std::uint32_t k = 0;
    std::uint32_t lo = 0;
    std::uint32_t mid = 0;
    std::uint32_t hi = 0;
    Configuration from;
    Configuration to;
    std::optional<Configuration> middle;
};

struct CrossExamView {
    const StepProgram& p;
    std::span<const std::uint8_t> x;
    const StochasticOracle& o;
};

/// What a prover sees in round t of the stochastic protocol: the bits
/// a_1..a_{t-1} and announcements of earlier rounds. Share copies receive
/// the same view; the current announcement is never part of it.
struct StochasticView {
    const StepProgram& p;
    std::span<const std::uint8_t> x;
    const StochasticOracle& o;
    const ResolvedParams& params;
    std::span<const Cell> committed;
    std::span<const mpq_class> announcements;
};

enum class WitnessMode { Det, Stoch };

WitnessMode parse_witness_mode(const std::string& text);
std::string to_string(WitnessMode mode);

struct WitnessView {
    WitnessMode mode;
    const StepProgram& verifier;
    std::span<const std::uint8_t> x;
    std::uint32_t witness_length;
    const StochasticOracle& o;
};

/// Private per-debate state of one prover instance: its random stream and
/// its work counters.
struct ProverContext {
    ProverContext(Party party, std::uint64_t stream_key) : party(party), rng(stream_key) {}

    Party party;
    Stream rng;
    std::uint64_t steps = 0;
    std::uint64_t oracle_samples = 0;

    UnitRational sample_mean(const StochasticOracle& o, std::uint64_t query, std::uint64_t n, SamplingMode mode);
};

/// Prover policy. Each hook returns the message for one protocol move;
/// the default answer is NoMessage, which the referee treats as malformed.
/// Instances may cache per-debate work; fresh_copy() returns the same
/// policy with nothing cached.
class Strategy {
public:
    virtual ~Strategy() = default;

    virtual std::string name() const = 0;
    virtual std::unique_ptr<Strategy> fresh_copy() const = 0;

    virtual Message final_claim(const BisectionView&, ProverContext&) { return NoMessage{}; }
    virtual Message midpoint(const BisectionView&, const BisectionRound&, ProverContext&) { return NoMessage{}; }
    virtual Message select_half(const BisectionView&, const BisectionRound&, ProverContext&) { return NoMessage{}; }

    virtual Message transcript(const CrossExamView&, ProverContext&) { return NoMessage{}; }
    virtual Message locate(const CrossExamView&, std::span<const Cell>, ProverContext&) { return NoMessage{}; }

    virtual Message announce(const StochasticView&, std::uint32_t, ProverContext&) { return NoMessage{}; }
    virtual Message share(const StochasticView&, std::uint32_t, ProverContext&) { return NoMessage{}; }
    virtual Message set_bit(const StochasticView&, std::uint32_t, const mpq_class&, UnitFixed, ProverContext&)
    {
        return NoMessage{};
    }
    virtual Message abort_decision(const StochasticView&, std::uint32_t, const mpq_class&, std::uint8_t,
                                   ProverContext&)
    {
        return NoMessage{};
    }

    virtual Message witness(const WitnessView&, ProverContext&) { return NoMessage{}; }
};

/// The provers from the completeness and soundness arguments, for both
/// roles of every protocol.
///
/// Bisection: A replays one snapshotted run; B re-simulates both halves
/// and selects the first wrong one, or continues when both are right.
/// Cross-examination: A sends the true transcript; B names the first
/// locally inconsistent cell.
/// Stochastic: A announces the exact value at deterministic steps and a
/// mean of R oracle samples at query steps; B aborts iff its own estimate
/// is at least 1/(2d) away. Shares are uniform.
/// Witness: A searches all witnesses for one the verifier accepts.
class HonestProver : public Strategy {
public:
    std::string name() const override { return "Honest"; }
    std::unique_ptr<Strategy> fresh_copy() const override { return std::make_unique<HonestProver>(); }

    Message final_claim(const BisectionView& v, ProverContext& ctx) override;
    Message midpoint(const BisectionView& v, const BisectionRound& r, ProverContext& ctx) override;
    Message select_half(const BisectionView& v, const BisectionRound& r, ProverContext& ctx) override;

    Message transcript(const CrossExamView& v, ProverContext& ctx) override;
    Message locate(const CrossExamView& v, std::span<const Cell> claimed, ProverContext& ctx) override;

    Message announce(const StochasticView& v, std::uint32_t t, ProverContext& ctx) override;
    Message share(const StochasticView& v, std::uint32_t t, ProverContext& ctx) override;
    Message set_bit(const StochasticView& v, std::uint32_t t, const mpq_class& p_hat, UnitFixed z,
                    ProverContext& ctx) override;
    Message abort_decision(const StochasticView& v, std::uint32_t t, const mpq_class& p_hat, std::uint8_t a_t,
                           ProverContext& ctx) override;

    Message witness(const WitnessView& v, ProverContext& ctx) override;

protected:
    /// Configurations 0..T of the true run (computed once per instance).
    const std::vector<Configuration>& true_run(const BisectionView& v, ProverContext& ctx);
    /// Cells of the true transcript (deterministic oracle).
    const std::vector<Cell>& true_transcript(const CrossExamView& v, ProverContext& ctx);
    /// Honest estimate of P[y_t = 1 | committed reads]: exact at Det steps, R samples at Query steps.
    UnitRational estimate(const StochasticView& v, std::uint32_t t, ProverContext& ctx);

private:
    std::optional<std::vector<Configuration>> run_;
    std::optional<std::vector<Cell>> transcript_;
};

/// Configuration reached from c after `steps` deterministic steps, or nullopt
/// if c is invalid or the machine has no successor.
std::optional<Configuration> simulate(const ConfigurationMachine& m, const Configuration& c, std::uint32_t steps,
                                      const StochasticOracle& o);

/// First t whose claimed cell differs from its recomputation, or nullopt.
/// Query cells are recomputed with the deterministic oracle answer.
std::optional<std::uint32_t> first_inconsistent(const StepProgram& p, std::span<const std::uint8_t> x,
                                                const StochasticOracle& o, std::span<const Cell> cells);

/// Recomputation of cell t from the claimed cells (deterministic oracle).
Cell recompute_cell(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x, const StochasticOracle& o,
                    std::span<const Cell> cells);

} // namespace debate
