#include "debate/adversary.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "debate/error.hpp"

namespace debate {

namespace {

const std::vector<std::string> kFamilies = {
    "Honest",         "ShiftedAnnouncer", "LyingFinalBit",      "ConstantAnnouncer",   "BiasedShare",
    "AlwaysAbort",    "NeverAbort",       "FrivolousAccuser",   "WrongReadSet",        "FixedSelectors",
    "MidpointCorruptor", "TranscriptCorruptor", "BadWitness",
};

std::uint32_t to_u32(const std::string& key, const std::string& text)
{
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(text, &used);
        if (used != text.size() || v > 0xFFFFFFFFul) throw std::invalid_argument(text);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameter, "parameter " + key + " expects an unsigned integer, got '" + text + "'");
    }
}

std::vector<std::uint32_t> to_list(const std::string& key, const std::string& text, char sep)
{
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(to_u32(key, item));
    }
    return out;
}

Configuration flip_bits(const ConfigurationMachine& m, const Configuration& c, const std::vector<std::uint32_t>& bits)
{
    if (bits.empty()) {
        Configuration out = c;
        out.tape ^= std::uint64_t{1} << c.head;
        return out;
    }
    Bits enc = m.serialize(c);
    for (std::uint32_t b : bits) {
        if (b >= enc.size()) throw Error(ErrorCode::BadParameter, "flip position beyond the configuration encoding");
        enc[b] ^= 1u;
    }
    return m.deserialize(enc);
}

/// Amount given either as a plain rational or as "q d", meaning q / d.
struct Scaled {
    mpq_class value;
    bool per_d = false;

    static Scaled parse(const std::string& text)
    {
        if (!text.empty() && text.back() == 'd') return {parse_rational(text.substr(0, text.size() - 1)), true};
        return {parse_rational(text), false};
    }
    mpq_class resolve(std::uint64_t d) const
    {
        return per_d ? mpq_class(value / mpq_class(static_cast<unsigned long>(d))) : value;
    }
};

class SpecStrategy : public HonestProver {
public:
    explicit SpecStrategy(AdversarySpec spec) : spec_(std::move(spec))
    {
        const std::string& f = spec_.family;
        if (std::find(kFamilies.begin(), kFamilies.end(), f) == kFamilies.end()) {
            throw Error(ErrorCode::UnknownFamily, "unknown adversary family '" + f + "'");
        }
        if (spec_.has("witness")) witness_ = parse_bits(spec_.get("witness"));
        if (f == "BadWitness" && !witness_) throw Error(ErrorCode::BadParameter, "BadWitness needs witness=<bits>");
        round_ = to_u32("t", spec_.get_or("t", (f == "FrivolousAccuser" || f == "WrongReadSet") ? "1" : "0"));

        if (f == "ShiftedAnnouncer") {
            shift_ = Scaled::parse(spec_.get("delta"));
            const std::string dir = spec_.get_or("dir", "+1");
            if (dir == "-1" || dir == "-") {
                shift_.value = -shift_.value;
            } else if (dir != "+1" && dir != "1" && dir != "+") {
                throw Error(ErrorCode::BadParameter, "dir must be +1 or -1");
            }
        }
        if (f == "ConstantAnnouncer") constant_ = parse_rational(spec_.get("p"));
        if (f == "BiasedShare") share_ = UnitFixed::from_rational(parse_rational(spec_.get("c")));
        target_ = static_cast<std::uint8_t>(to_u32("target", spec_.get_or("target", "1")) & 1u);
        selector_ = static_cast<std::uint8_t>(to_u32("b", spec_.get_or("b", "1")));
        if (f == "FixedSelectors") {
            selectors_ = spec_.get("bits");
            if (selectors_.find_first_not_of("01c") != std::string::npos) {
                throw Error(ErrorCode::BadParameter, "FixedSelectors bits may only contain 0, 1 and c");
            }
        }
        if (f == "MidpointCorruptor") {
            if (spec_.has("lie_from")) lie_from_ = to_u32("lie_from", spec_.get("lie_from"));
            flip_ = to_list("flip", spec_.get_or("flip", ""), ',');
            if (spec_.has("round")) corrupt_round_ = to_u32("round", spec_.get("round"));
            mask_ = to_list("mask", spec_.get_or("mask", ""), ',');
            const std::string forge = spec_.get_or("forge", "flip");
            if (forge != "flip" && forge != "resimulate") throw Error(ErrorCode::BadParameter, "forge must be flip|resimulate");
            resimulate_ = forge == "resimulate";
        }
        claim_ = to_u32("claim", spec_.get_or("claim", "1")) != 0;
        if (f == "TranscriptCorruptor") {
            std::stringstream ss(spec_.get("cells"));
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                const auto colon = item.find(':');
                const std::uint32_t t = to_u32("cells", item.substr(0, colon));
                std::vector<std::uint32_t> bits =
                    colon == std::string::npos ? std::vector<std::uint32_t>{0} : to_list("cells", item.substr(colon + 1), '.');
                corrupt_cells_.emplace_back(t, std::move(bits));
            }
            std::sort(corrupt_cells_.begin(), corrupt_cells_.end());
            consistent_ = to_u32("consistent", spec_.get_or("consistent", "0")) != 0;
        }
    }

    std::string name() const override { return spec_.str(); }
    std::unique_ptr<Strategy> fresh_copy() const override { return std::make_unique<SpecStrategy>(spec_); }

    Message final_claim(const BisectionView& v, ProverContext& ctx) override
    {
        if (is("LyingFinalBit")) {
            Configuration c = true_run(v, ctx).back();
            set_output(c, target_);
            return ConfigurationMsg{c};
        }
        if (is("MidpointCorruptor")) {
            Configuration c = forged(v, ctx).back();
            if (claim_) {
                c.state = v.m.halt_state();
                c.counter = v.m.time();
                set_output(c, 1);
            }
            return ConfigurationMsg{c};
        }
        return HonestProver::final_claim(v, ctx);
    }

    Message midpoint(const BisectionView& v, const BisectionRound& r, ProverContext& ctx) override
    {
        if (!is("MidpointCorruptor")) return HonestProver::midpoint(v, r, ctx);
        Configuration c = forged(v, ctx).at(r.mid);
        if (corrupt_round_ && *corrupt_round_ == r.k) c = flip_bits(v.m, c, mask_);
        return ConfigurationMsg{c};
    }

    Message select_half(const BisectionView& v, const BisectionRound& r, ProverContext& ctx) override
    {
        if (is("NeverAbort")) return Continue{};
        if (is("FrivolousAccuser")) return HalfSelector{selector_};
        if (is("WrongReadSet")) return HalfSelector{2};
        if (is("FixedSelectors")) {
            if (r.k >= selectors_.size() || selectors_[r.k] == 'c') return Continue{};
            return HalfSelector{static_cast<std::uint8_t>(selectors_[r.k] - '0')};
        }
        return HonestProver::select_half(v, r, ctx);
    }

    Message transcript(const CrossExamView& v, ProverContext& ctx) override
    {
        std::vector<Cell> cells = true_transcript(v, ctx);
        if (is("LyingFinalBit")) {
            cells.back() = (cells.back() & ~Cell{1}) | target_;
            return TranscriptMsg{cells};
        }
        if (!is("TranscriptCorruptor")) return TranscriptMsg{cells};

        std::set<std::uint32_t> touched;
        for (const auto& [t, bits] : corrupt_cells_) {
            if (t == 0 || t > cells.size()) throw Error(ErrorCode::BadParameter, "TranscriptCorruptor cell out of range");
            for (std::uint32_t b : bits) cells[t - 1] ^= (Cell{1} << b) & v.p.cell_mask();
            touched.insert(t);
        }
        if (consistent_ && !touched.empty()) {
            for (std::uint32_t t = *touched.begin() + 1; t <= cells.size(); ++t) {
                if (!touched.count(t)) cells[t - 1] = recompute_cell(v.p, t, v.x, v.o, cells);
            }
        }
        if (claim_) cells.back() |= 1u;
        return TranscriptMsg{cells};
    }

    Message locate(const CrossExamView& v, std::span<const Cell> claimed, ProverContext& ctx) override
    {
        if (is("NeverAbort")) return Continue{};
        if (is("FrivolousAccuser")) {
            const std::uint32_t t = std::min<std::uint32_t>(std::max<std::uint32_t>(round_, 1), v.p.length());
            return LocationClaim{t, v.p.step(t).reads};
        }
        if (is("WrongReadSet")) {
            const std::uint32_t t = std::min<std::uint32_t>(std::max<std::uint32_t>(round_, 1), v.p.length());
            std::vector<CellRef> reads = v.p.step(t).reads;
            if (reads.empty()) {
                reads.push_back(CellRef::cell(t));
            } else {
                reads.pop_back();
            }
            return LocationClaim{t, reads};
        }
        return HonestProver::locate(v, claimed, ctx);
    }

    Message announce(const StochasticView& v, std::uint32_t t, ProverContext& ctx) override
    {
        if (is("ConstantAnnouncer")) return ProbabilityAnnouncement{constant_};
        if (is("LyingFinalBit") && t == v.p.length()) return ProbabilityAnnouncement{mpq_class(target_)};
        if (is("ShiftedAnnouncer") && (round_ == 0 || round_ == t)) {
            const UnitRational honest = estimate(v, t, ctx);
            return ProbabilityAnnouncement{shift_clipped(honest, shift_.resolve(v.params.d)).value()};
        }
        return HonestProver::announce(v, t, ctx);
    }

    Message share(const StochasticView& v, std::uint32_t t, ProverContext& ctx) override
    {
        if (is("BiasedShare")) return RandomShare{share_};
        return HonestProver::share(v, t, ctx);
    }

    Message abort_decision(const StochasticView& v, std::uint32_t t, const mpq_class& p_hat, std::uint8_t a_t,
                           ProverContext& ctx) override
    {
        if (is("NeverAbort")) return Continue{};
        if ((is("AlwaysAbort") || is("FrivolousAccuser")) && (round_ == 0 || round_ == t)) return Abort{};
        if (is("WrongReadSet") && round_ == t) return NoMessage{};
        return HonestProver::abort_decision(v, t, p_hat, a_t, ctx);
    }

    Message witness(const WitnessView& v, ProverContext& ctx) override
    {
        if (witness_) return WitnessMsg{*witness_};
        return HonestProver::witness(v, ctx);
    }

private:
    bool is(const char* family) const { return spec_.family == family; }

    static void set_output(Configuration& c, std::uint8_t bit)
    {
        const std::uint64_t m = std::uint64_t{1} << c.head;
        c.tape = bit ? (c.tape | m) : (c.tape & ~m);
    }

    const std::vector<Configuration>& forged(const BisectionView& v, ProverContext& ctx)
    {
        if (forged_) return *forged_;
        std::vector<Configuration> run = true_run(v, ctx);
        if (lie_from_) {
            const std::uint32_t j = std::min(*lie_from_, v.m.time());
            const std::vector<Configuration> truth = run;
            run[j] = flip_bits(v.m, truth[j], flip_);
            for (std::uint32_t i = j + 1; i < run.size(); ++i) {
                if (!resimulate_) {
                    run[i] = flip_bits(v.m, truth[i], flip_);
                    continue;
                }
                ++ctx.steps;
                if (const auto next = simulate(v.m, run[i - 1], 1, v.o)) {
                    run[i] = *next;
                } else {
                    run[i] = run[i - 1];
                    run[i].counter = i;
                }
            }
        }
        forged_ = std::move(run);
        return *forged_;
    }

    AdversarySpec spec_;
    std::optional<Bits> witness_;
    std::uint32_t round_ = 0;
    Scaled shift_;
    mpq_class constant_;
    UnitFixed share_;
    std::uint8_t target_ = 1;
    std::uint8_t selector_ = 1;
    std::string selectors_;
    std::optional<std::uint32_t> lie_from_;
    std::vector<std::uint32_t> flip_;
    std::optional<std::uint32_t> corrupt_round_;
    std::vector<std::uint32_t> mask_;
    bool resimulate_ = false;
    bool claim_ = true;
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> corrupt_cells_;
    bool consistent_ = false;
    std::optional<std::vector<Configuration>> forged_;
};

} // namespace

AdversarySpec AdversarySpec::parse(std::string_view text)
{
    AdversarySpec spec;
    std::istringstream in{std::string(text)};
    std::string word;
    if (!(in >> word)) throw Error(ErrorCode::ParseError, "empty adversary spec");
    spec.family = word;
    while (in >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorCode::ParseError, "adversary parameter '" + word + "' is not key=value");
        }
        if (!spec.params.emplace(word.substr(0, eq), word.substr(eq + 1)).second) {
            throw Error(ErrorCode::ParseError, "duplicate adversary parameter '" + word.substr(0, eq) + "'");
        }
    }
    return spec;
}

std::string AdversarySpec::str() const
{
    std::string out = family;
    for (const auto& [k, v] : params) out += " " + k + "=" + v;
    return out;
}

const std::string& AdversarySpec::get(const std::string& key) const
{
    const auto it = params.find(key);
    if (it == params.end()) throw Error(ErrorCode::BadParameter, family + " requires parameter " + key);
    return it->second;
}

std::string AdversarySpec::get_or(const std::string& key, const std::string& fallback) const
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::unique_ptr<Strategy> make_adversary(const AdversarySpec& spec)
{
    if (spec.family == "Honest" && spec.params.empty()) return std::make_unique<HonestProver>();
    return std::make_unique<SpecStrategy>(spec);
}

std::unique_ptr<Strategy> make_adversary(std::string_view text)
{
    return make_adversary(AdversarySpec::parse(text));
}

const std::vector<std::string>& adversary_families()
{
    return kFamilies;
}

} // namespace debate
