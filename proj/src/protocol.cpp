#include "debate/protocol.hpp"

#include "debate/error.hpp"

namespace debate {

namespace {

/// Bookkeeping shared by the referees: log, counters, early termination.
class Referee {
public:
    Referee(const char* protocol, std::uint64_t seed, const RunOptions& options)
        : options_(options), a_(Party::A, derive_key(seed, {static_cast<std::uint64_t>(StreamRole::ProverA)})),
          b_(Party::B, derive_key(seed, {static_cast<std::uint64_t>(StreamRole::ProverB)})),
          verifier_rng_(Stream::derive(seed, {static_cast<std::uint64_t>(StreamRole::Verifier)}))
    {
        out_.protocol = protocol;
        out_.seed = seed;
    }

    ProverContext& ctx(Party p) { return p == Party::A ? a_ : b_; }
    Stream& verifier_rng() { return verifier_rng_; }
    Counters& counters() { return out_.counters; }
    const RunOptions& options() const { return options_; }

    void note(std::uint32_t round, const std::string& actor, const Message& m)
    {
        if (options_.record_log) out_.log.push_back({round, actor, describe(m)});
    }
    void note(std::uint32_t round, const std::string& actor, const std::string& text)
    {
        if (options_.record_log) out_.log.push_back({round, actor, text});
    }

    DebateOutcome forfeit(std::uint32_t round, Party p, const std::string& reason)
    {
        note(round, "V", to_string(p) + " forfeits: " + reason);
        out_.forfeit = Forfeit{p, reason};
        return finish(p == Party::A ? 0 : 1);
    }

    DebateOutcome finish(std::uint8_t verdict)
    {
        out_.verdict = verdict;
        out_.counters.proverA_steps += a_.steps;
        out_.counters.proverB_steps += b_.steps;
        out_.counters.proverA_oracle_samples += a_.oracle_samples;
        out_.counters.proverB_oracle_samples += b_.oracle_samples;
        a_.steps = b_.steps = a_.oracle_samples = b_.oracle_samples = 0;
        note(0, "V", "verdict " + std::to_string(verdict));
        return out_;
    }

    void set_abort(std::uint32_t t) { out_.abort_round = t; }
    void set_checked(std::uint32_t t) { out_.checked_step = t; }

    /// Folds the work of a share copy into its party's totals.
    void absorb(const ProverContext& copy)
    {
        ProverContext& owner = ctx(copy.party);
        owner.steps += copy.steps;
        owner.oracle_samples += copy.oracle_samples;
    }

private:
    RunOptions options_;
    ProverContext a_;
    ProverContext b_;
    Stream verifier_rng_;
    DebateOutcome out_;
};

template <typename T>
const T* as(const Message& m)
{
    return std::get_if<T>(&m);
}

} // namespace

std::uint8_t verifier_abort_check(const UnitRational& p_hat, const UnitRational& p_oracle, std::uint64_t d)
{
    if (d == 0) throw Error(ErrorCode::BadParameter, "d must be positive");
    const mpq_class threshold(1, static_cast<unsigned long>(4 * d));
    return abs_diff(p_oracle, p_hat).value() >= threshold ? 0 : 1;
}

std::uint64_t crossexam_bit_budget(const StepProgram& p, std::uint32_t t)
{
    const std::uint64_t lg = ceil_log2(p.length());
    return std::uint64_t{p.max_read_bits()} + p.width() + p.step(t).reads.size() * lg + lg;
}

DebateOutcome run_bisection(const ConfigurationMachine& m, std::span<const std::uint8_t> x, const StochasticOracle& o,
                            Strategy& a, Strategy& b, std::uint64_t seed, const RunOptions& options)
{
    if (m.query() && !o.is_deterministic()) {
        throw Error(ErrorCode::BadParameter, "bisection needs a deterministic oracle");
    }
    Referee ref("bisection", seed, options);
    const BisectionView view{m, x, o};
    Counters& counters = ref.counters();
    const auto read_config = [&] {
        ++counters.verifier_configurations_read;
        counters.verifier_bits_read += m.serialized_bits();
    };

    Configuration from = m.initial(x);
    read_config();

    const Message claim_msg = a.final_claim(view, ref.ctx(Party::A));
    ref.note(0, "A", claim_msg);
    const auto* claim = as<ConfigurationMsg>(claim_msg);
    if (!claim || !m.fits_serialization(claim->c)) return ref.forfeit(0, Party::A, "final claim is not a configuration");
    read_config();
    Configuration to = claim->c;
    if (!m.is_valid(to) || !m.is_halted(to) || to.counter != m.time() || m.output(to) != 1) {
        ref.note(0, "V", "final claim is not an accepting halted configuration at step T");
        return ref.finish(0);
    }

    std::uint32_t lo = 0;
    std::uint32_t hi = m.time();
    for (std::uint32_t k = 0; hi - lo > 1; ++k) {
        BisectionRound round{k, lo, lo + (hi - lo + 1) / 2, hi, from, to, std::nullopt};
        const Message mid_msg = a.midpoint(view, round, ref.ctx(Party::A));
        ref.note(k + 1, "A", mid_msg);
        const auto* mid = as<ConfigurationMsg>(mid_msg);
        if (!mid || !m.fits_serialization(mid->c)) return ref.forfeit(k + 1, Party::A, "midpoint is not a configuration");
        read_config();
        if (!m.is_valid(mid->c) || mid->c.counter != round.mid) {
            ref.note(k + 1, "V", "midpoint is not a valid configuration at step " + std::to_string(round.mid));
            return ref.finish(0);
        }
        round.middle = mid->c;

        const Message sel_msg = b.select_half(view, round, ref.ctx(Party::B));
        ref.note(k + 1, "B", sel_msg);
        if (as<Continue>(sel_msg)) return ref.finish(1);
        const auto* sel = as<HalfSelector>(sel_msg);
        if (!sel || sel->b > 1) return ref.forfeit(k + 1, Party::B, "expected a half selector or continue");
        if (sel->b == 1) {
            hi = round.mid;
            to = mid->c;
        } else {
            lo = round.mid;
            from = mid->c;
        }
    }

    if (options.fault == VerifierFault::SkipFinalCheck) return ref.finish(1);
    std::optional<std::uint8_t> bit;
    if (m.in_query_state(from)) {
        ++counters.verifier_oracle_queries;
        bit = o.sample(m.query_index(from), ref.verifier_rng());
    }
    try {
        const Configuration next = vm_advance(m, from, bit);
        const bool ok = next == to;
        ref.note(0, "V", std::string("step ") + std::to_string(lo) + "->" + std::to_string(hi) + (ok ? " checks" : " fails"));
        return ref.finish(ok ? 1 : 0);
    } catch (const Error& e) {
        ref.note(0, "V", std::string("step check: ") + e.what());
        return ref.finish(0);
    }
}

DebateOutcome run_crossexam(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                            Strategy& a, Strategy& b, std::uint64_t seed, const RunOptions& options)
{
    if (p.num_query_steps() > 0 && !o.is_deterministic()) {
        throw Error(ErrorCode::BadParameter, "cross-examination needs a deterministic oracle");
    }
    if (x.size() != p.input_length()) throw Error(ErrorCode::BadParameter, p.name() + ": input length mismatch");
    Referee ref("crossexam", seed, options);
    const CrossExamView view{p, x, o};
    Counters& counters = ref.counters();
    const std::uint64_t lg = ceil_log2(p.length());

    const Message tr_msg = a.transcript(view, ref.ctx(Party::A));
    ref.note(0, "A", tr_msg);
    const auto* tr = as<TranscriptMsg>(tr_msg);
    if (!tr || tr->cells.size() != p.length()) return ref.forfeit(0, Party::A, "transcript has the wrong length");
    for (Cell c : tr->cells) {
        if ((c & ~p.cell_mask()) != 0) return ref.forfeit(0, Party::A, "transcript cell wider than w");
    }
    const std::vector<Cell>& cells = tr->cells;

    const Message loc_msg = b.locate(view, cells, ref.ctx(Party::B));
    ref.note(1, "B", loc_msg);
    if (as<Continue>(loc_msg)) {
        ++counters.verifier_bits_read;
        return ref.finish(output_bit(cells.back()));
    }
    const auto* loc = as<LocationClaim>(loc_msg);
    if (!loc) return ref.forfeit(1, Party::B, "expected a location or continue");
    if (loc->t == 0 || loc->t > p.length()) return ref.forfeit(1, Party::B, "location out of range");
    const Step& step = p.step(loc->t);
    if (loc->reads != step.reads) return ref.forfeit(1, Party::B, "claimed read-set differs from I(t)");

    ref.set_checked(loc->t);
    counters.verifier_bits_read += lg;
    for (const CellRef& r : step.reads) {
        if (r.source == CellRef::Source::Cell) {
            counters.verifier_bits_read += (step.kind == StepKind::Query ? 1 : p.width()) + lg;
        } else if (r.source == CellRef::Source::Input) {
            counters.verifier_bits_read += 1;
        }
    }
    counters.verifier_bits_read += p.width();
    if (options.fault == VerifierFault::SkipFinalCheck) return ref.finish(1);

    const std::vector<Cell> values = gather_reads(p, loc->t, x, cells);
    Cell expected = 0;
    if (step.kind == StepKind::Det) {
        expected = apply_det(p, loc->t, values);
    } else {
        ++counters.verifier_oracle_queries;
        expected = o.sample(query_of(values), ref.verifier_rng());
    }
    const bool ok = expected == cells[loc->t - 1];
    ref.note(1, "V", "step " + std::to_string(loc->t) + (ok ? " checks" : " fails"));
    return ref.finish(ok ? 1 : 0);
}

DebateOutcome run_stochastic(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                             Strategy& a, Strategy& b, const ProtocolParams& params, std::uint64_t seed,
                             const RunOptions& options)
{
    if (p.width() != 1) throw Error(ErrorCode::BadParameter, p.name() + ": stochastic debate needs bit cells");
    if (!p.lipschitz()) throw Error(ErrorCode::BadParameter, p.name() + ": stochastic debate needs a declared K");
    if (x.size() != p.input_length()) throw Error(ErrorCode::BadParameter, p.name() + ": input length mismatch");
    if (p.num_query_steps() > 0 && o.query_length() != p.query_length()) {
        throw Error(ErrorCode::BadQueryLength, p.name() + ": oracle query length mismatch");
    }
    const ResolvedParams rp = resolve(params, *p.lipschitz(), p.length());
    Referee ref("stochastic", seed, options);
    Counters& counters = ref.counters();

    std::vector<Cell> committed;
    std::vector<mpq_class> announced;
    committed.reserve(p.length());
    announced.reserve(p.length());

    for (std::uint32_t t = 1; t <= p.length(); ++t) {
        const StochasticView view{p, x, o, rp, committed, announced};

        const Message ann_msg = a.announce(view, t, ref.ctx(Party::A));
        ref.note(t, "A", ann_msg);
        const auto* ann = as<ProbabilityAnnouncement>(ann_msg);
        if (!ann || ann->p < 0 || ann->p > 1) return ref.forfeit(t, Party::A, "announcement outside [0, 1]");
        const UnitRational p_hat(ann->p);

        const auto copy_share = [&](const Strategy& owner, Party party, StreamRole role) -> std::optional<UnitFixed> {
            std::unique_ptr<Strategy> copy = owner.fresh_copy();
            ProverContext ctx(party, derive_key(seed, {static_cast<std::uint64_t>(role), t}));
            const Message msg = copy->share(view, t, ctx);
            ref.absorb(ctx);
            ref.note(t, to_string(party) + "'", msg);
            if (const auto* s = as<RandomShare>(msg)) return s->z;
            return std::nullopt;
        };
        const auto share_b = copy_share(b, Party::B, StreamRole::CopyB);
        if (!share_b) return ref.forfeit(t, Party::B, "share copy sent no share");
        const auto share_a = copy_share(a, Party::A, StreamRole::CopyA);
        if (!share_a) return ref.forfeit(t, Party::A, "share copy sent no share");
        const UnitFixed z = mod1_add(*share_a, *share_b);
        if (options.on_coin) options.on_coin(t, z);

        const Message bit_msg = a.set_bit(view, t, ann->p, z, ref.ctx(Party::A));
        ref.note(t, "A", bit_msg);
        const auto* bit = as<SampledBit>(bit_msg);
        const std::uint8_t expected = z.at_most(p_hat) ? 1 : 0;
        if (!bit || bit->bit != expected) return ref.forfeit(t, Party::A, "committed bit disagrees with z <= p_hat");

        const Message ab_msg = b.abort_decision(view, t, ann->p, bit->bit, ref.ctx(Party::B));
        ref.note(t, "B", ab_msg);
        if (as<Abort>(ab_msg)) {
            ref.set_abort(t);
            const std::vector<Cell> values = gather_reads(p, t, x, committed);
            UnitRational p_oracle;
            if (p.step(t).kind == StepKind::Det) {
                p_oracle = UnitRational::bit(output_bit(apply_det(p, t, values)));
            } else {
                counters.verifier_oracle_queries += rp.r;
                p_oracle = o.sample_mean(query_of(values), rp.r, ref.verifier_rng(), rp.sampling);
            }
            const std::uint8_t verdict = verifier_abort_check(p_hat, p_oracle, rp.d);
            ref.note(t, "V", "abort check p_oracle=" + p_oracle.str() + " p_hat=" + p_hat.str());
            return ref.finish(verdict);
        }
        if (!as<Continue>(ab_msg)) return ref.forfeit(t, Party::B, "expected abort or continue");

        committed.push_back(bit->bit);
        announced.push_back(ann->p);
    }
    return ref.finish(output_bit(committed.back()));
}

DebateOutcome run_witness(WitnessMode mode, const StepProgram& verifier, std::span<const std::uint8_t> x,
                          std::uint32_t witness_length, const StochasticOracle& o, Strategy& a, Strategy& b,
                          const ProtocolParams& params, std::uint64_t seed, const RunOptions& options)
{
    if (x.size() + witness_length != verifier.input_length()) {
        throw Error(ErrorCode::BadParameter, verifier.name() + ": |x| + |w| must equal the verifier input length");
    }
    const char* name = mode == WitnessMode::Det ? "witness-det" : "witness-stoch";
    ProverContext ctx(Party::A, derive_key(seed, {static_cast<std::uint64_t>(StreamRole::ProverA), 0}));
    const Message msg = a.witness(WitnessView{mode, verifier, x, witness_length, o}, ctx);
    const auto* w = as<WitnessMsg>(msg);
    if (!w || w->w.size() != witness_length) {
        Referee ref(name, seed, options);
        ref.note(0, "A", msg);
        ref.absorb(ctx);
        return ref.forfeit(0, Party::A, "witness has the wrong length");
    }

    Bits input(x.begin(), x.end());
    for (std::uint8_t bit : w->w) input.push_back(bit & 1u);
    DebateOutcome out = mode == WitnessMode::Det ? run_crossexam(verifier, input, o, a, b, seed, options)
                                                 : run_stochastic(verifier, input, o, a, b, params, seed, options);
    out.protocol = name;
    out.counters.proverA_steps += ctx.steps;
    out.counters.proverA_oracle_samples += ctx.oracle_samples;
    if (options.record_log) out.log.insert(out.log.begin(), LogEntry{0, "A", describe(msg)});
    return out;
}

} // namespace debate
