#include "debate/strategy.hpp"

#include "debate/error.hpp"
#include "debate/oracle_analysis.hpp"

namespace debate {

WitnessMode parse_witness_mode(const std::string& text)
{
    if (text == "det") return WitnessMode::Det;
    if (text == "stoch") return WitnessMode::Stoch;
    throw Error(ErrorCode::BadParameter, "witness mode must be 'det' or 'stoch', got '" + text + "'");
}

std::string to_string(WitnessMode mode)
{
    return mode == WitnessMode::Det ? "det" : "stoch";
}

UnitRational ProverContext::sample_mean(const StochasticOracle& o, std::uint64_t query, std::uint64_t n,
                                        SamplingMode mode)
{
    oracle_samples += n;
    return o.sample_mean(query, n, rng, mode);
}

std::optional<Configuration> simulate(const ConfigurationMachine& m, const Configuration& c, std::uint32_t steps,
                                      const StochasticOracle& o)
{
    Configuration cur = c;
    Stream unused(0);
    try {
        for (std::uint32_t i = 0; i < steps; ++i) cur = vm_advance(m, cur, o, unused);
    } catch (const Error&) {
        return std::nullopt;
    }
    return cur;
}

Cell recompute_cell(const StepProgram& p, std::uint32_t t, std::span<const std::uint8_t> x, const StochasticOracle& o,
                    std::span<const Cell> cells)
{
    const std::vector<Cell> values = gather_reads(p, t, x, cells);
    if (p.step(t).kind == StepKind::Det) return apply_det(p, t, values);
    return o.probability(query_of(values)).is_one() ? 1 : 0;
}

std::optional<std::uint32_t> first_inconsistent(const StepProgram& p, std::span<const std::uint8_t> x,
                                                const StochasticOracle& o, std::span<const Cell> cells)
{
    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        if (recompute_cell(p, t, x, o, cells) != cells[t - 1]) return t;
    }
    return std::nullopt;
}

const std::vector<Configuration>& HonestProver::true_run(const BisectionView& v, ProverContext& ctx)
{
    if (!run_) {
        run_ = vm_run(v.m, v.x, v.o, ctx.rng, true).configurations;
        ctx.steps += v.m.time();
    }
    return *run_;
}

const std::vector<Cell>& HonestProver::true_transcript(const CrossExamView& v, ProverContext& ctx)
{
    if (!transcript_) {
        transcript_ = sp_run(v.p, v.x, v.o, ctx.rng).transcript.values();
        ctx.steps += v.p.length();
    }
    return *transcript_;
}

Message HonestProver::final_claim(const BisectionView& v, ProverContext& ctx)
{
    return ConfigurationMsg{true_run(v, ctx).back()};
}

Message HonestProver::midpoint(const BisectionView& v, const BisectionRound& r, ProverContext& ctx)
{
    return ConfigurationMsg{true_run(v, ctx).at(r.mid)};
}

Message HonestProver::select_half(const BisectionView& v, const BisectionRound& r, ProverContext& ctx)
{
    if (!r.middle) return Continue{};
    ctx.steps += r.mid - r.lo;
    const auto first = simulate(v.m, r.from, r.mid - r.lo, v.o);
    if (!first || *first != *r.middle) return HalfSelector{1};
    ctx.steps += r.hi - r.mid;
    const auto second = simulate(v.m, *r.middle, r.hi - r.mid, v.o);
    if (!second || *second != r.to) return HalfSelector{0};
    return Continue{};
}

Message HonestProver::transcript(const CrossExamView& v, ProverContext& ctx)
{
    return TranscriptMsg{true_transcript(v, ctx)};
}

Message HonestProver::locate(const CrossExamView& v, std::span<const Cell> claimed, ProverContext& ctx)
{
    for (std::uint32_t t = 1; t <= v.p.length(); ++t) {
        ++ctx.steps;
        if (recompute_cell(v.p, t, v.x, v.o, claimed) != claimed[t - 1]) return LocationClaim{t, v.p.step(t).reads};
    }
    return Continue{};
}

UnitRational HonestProver::estimate(const StochasticView& v, std::uint32_t t, ProverContext& ctx)
{
    ++ctx.steps;
    const std::vector<Cell> values = gather_reads(v.p, t, v.x, v.committed);
    if (v.p.step(t).kind == StepKind::Det) return UnitRational::bit(output_bit(apply_det(v.p, t, values)));
    return ctx.sample_mean(v.o, query_of(values), v.params.R, v.params.sampling);
}

Message HonestProver::announce(const StochasticView& v, std::uint32_t t, ProverContext& ctx)
{
    return ProbabilityAnnouncement{estimate(v, t, ctx).value()};
}

Message HonestProver::share(const StochasticView&, std::uint32_t, ProverContext& ctx)
{
    return RandomShare{ctx.rng.uniform_fixed()};
}

Message HonestProver::set_bit(const StochasticView&, std::uint32_t, const mpq_class& p_hat, UnitFixed z,
                              ProverContext&)
{
    return SampledBit{static_cast<std::uint8_t>(z.at_most(UnitRational(p_hat)) ? 1 : 0)};
}

Message HonestProver::abort_decision(const StochasticView& v, std::uint32_t t, const mpq_class& p_hat, std::uint8_t,
                                     ProverContext& ctx)
{
    const UnitRational q_hat = estimate(v, t, ctx);
    const mpq_class gap = abs(q_hat.value() - p_hat);
    if (gap >= v.params.abort_threshold().value()) return Abort{};
    return Continue{};
}

Message HonestProver::witness(const WitnessView& v, ProverContext& ctx)
{
    if (v.witness_length > max_enumerated_queries) {
        throw Error(ErrorCode::TooLargeToEnumerate, "witness search beyond 2^20 candidates");
    }
    Bits input(v.x.begin(), v.x.end());
    input.resize(v.x.size() + v.witness_length);
    Bits best(v.witness_length, 0);
    UnitRational best_p;
    bool found = false;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << v.witness_length); ++w) {
        const Bits bits = index_to_bits(w, v.witness_length);
        std::copy(bits.begin(), bits.end(), input.begin() + static_cast<std::ptrdiff_t>(v.x.size()));
        ctx.steps += v.verifier.length();
        UnitRational pr = exact_output_prob(v.verifier, input, v.o);
        if (!found || pr > best_p) {
            best = bits;
            best_p = std::move(pr);
            found = true;
        }
        if (best_p.is_one()) break;
    }
    return WitnessMsg{best};
}

} // namespace debate
