#include "debate/oracle_analysis.hpp"

#include <algorithm>
#include <set>

#include "debate/error.hpp"

namespace debate {

namespace {

class Enumerator {
public:
    Enumerator(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
               std::set<std::uint64_t>* reached)
        : p_(p), x_(x), o_(o), reached_(reached), cells_(p.length())
    {
    }

    mpq_class run()
    {
        total_ = 0;
        walk(1, mpq_class(1));
        return total_;
    }

private:
    void walk(std::uint32_t t, const mpq_class& weight)
    {
        for (; t <= p_.length(); ++t) {
            const std::vector<Cell> values = gather_reads(p_, t, x_, std::span<const Cell>(cells_.data(), t - 1));
            if (p_.step(t).kind == StepKind::Det) {
                cells_[t - 1] = apply_det(p_, t, values);
                continue;
            }
            const std::uint64_t z = query_of(values);
            if (reached_) reached_->insert(z);
            const mpq_class& q = o_.probability(z).value();
            if (q != 0) {
                cells_[t - 1] = 1;
                walk(t + 1, weight * q);
            }
            if (q != 1) {
                cells_[t - 1] = 0;
                walk(t + 1, weight * (1 - q));
            }
            return;
        }
        if (output_bit(cells_.back())) total_ += weight;
    }

    const StepProgram& p_;
    std::span<const std::uint8_t> x_;
    const StochasticOracle& o_;
    std::set<std::uint64_t>* reached_;
    std::vector<Cell> cells_;
    mpq_class total_;
};

void check_enumerable(const StepProgram& p, const StochasticOracle& o)
{
    if (p.num_query_steps() > max_enumerated_queries) {
        throw Error(ErrorCode::TooLargeToEnumerate,
                    p.name() + ": " + std::to_string(p.num_query_steps()) + " query steps exceed the enumeration limit");
    }
    if (p.num_query_steps() > 0 && o.query_length() != p.query_length()) {
        throw Error(ErrorCode::BadQueryLength, p.name() + ": oracle query length mismatch");
    }
}

} // namespace

UnitRational exact_output_prob(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o)
{
    check_enumerable(p, o);
    if (x.size() != p.input_length()) throw Error(ErrorCode::BadParameter, p.name() + ": input length mismatch");
    return UnitRational(Enumerator(p, x, o, nullptr).run());
}

double estimate_lipschitz(const StepProgram& p, std::span<const std::uint8_t> x, const StochasticOracle& o,
                          const UnitRational& delta)
{
    check_enumerable(p, o);
    if (x.size() != p.input_length()) throw Error(ErrorCode::BadParameter, p.name() + ": input length mismatch");
    if (delta.is_zero()) throw Error(ErrorCode::BadParameter, "Lipschitz probe needs delta > 0");

    std::set<std::uint64_t> reached;
    const mpq_class base = Enumerator(p, x, o, &reached).run();
    mpq_class best = 0;

    const auto consider = [&](const StochasticOracle& shifted, const mpq_class& distance) {
        if (distance == 0) return;
        const mpq_class moved = Enumerator(p, x, shifted, nullptr).run();
        const mpq_class ratio = abs(moved - base) / distance;
        if (ratio > best) best = ratio;
    };

    for (const int sign : {1, -1}) {
        const mpq_class step = sign * delta.value();

        mpq_class widest = 0;
        StochasticOracle all = o;
        if (o.tabulated()) {
            const std::uint64_t n = std::uint64_t{1} << o.query_length();
            std::vector<UnitRational> probs;
            probs.reserve(n);
            for (std::uint64_t z = 0; z < n; ++z) {
                probs.push_back(shift_clipped(o.probability(z), step));
                widest = std::max(widest, mpq_class(abs(probs.back().value() - o.probability(z).value())));
            }
            all = StochasticOracle::table(o.query_length(), std::move(probs));
        } else {
            const UnitRational moved = shift_clipped(o.probability(0), step);
            widest = abs(moved.value() - o.probability(0).value());
            all = StochasticOracle::constant(o.query_length(), moved);
        }
        consider(all, widest);

        if (o.query_length() > StochasticOracle::max_table_length) continue;
        for (const std::uint64_t z : reached) {
            const UnitRational moved = shift_clipped(o.probability(z), step);
            consider(o.with_probability(z, moved), abs(moved.value() - o.probability(z).value()));
        }
    }
    return best.get_d();
}

} // namespace debate
