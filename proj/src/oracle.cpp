#include "debate/oracle.hpp"

#include <random>

#include "debate/bits.hpp"
#include "debate/error.hpp"

namespace debate {

StochasticOracle::Entry StochasticOracle::make_entry(const UnitRational& p)
{
    Entry e;
    e.p = p;
    e.certain = p.is_one();
    e.approx = p.to_double();
    if (!e.certain) {
        // floor(p * 2^64) < 2^64 because p < 1
        mpz_class num = p.value().get_num();
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 64);
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), p.value().get_den_mpz_t());
        e.threshold = q.get_ui();
    }
    return e;
}

StochasticOracle StochasticOracle::table(std::uint32_t length, std::vector<UnitRational> probabilities)
{
    if (length > max_table_length) {
        throw Error(ErrorCode::TooLargeToEnumerate, "oracle tables are limited to l <= 20");
    }
    if (probabilities.size() != (std::size_t{1} << length)) {
        throw Error(ErrorCode::BadParameter, "oracle table needs exactly 2^l entries");
    }
    StochasticOracle o;
    o.length_ = length;
    o.tabulated_ = true;
    o.entries_.reserve(probabilities.size());
    for (const auto& p : probabilities) o.entries_.push_back(make_entry(p));
    return o;
}

StochasticOracle StochasticOracle::constant(std::uint32_t length, const UnitRational& p)
{
    if (length > 64) throw Error(ErrorCode::BadQueryLength, "query length above 64");
    StochasticOracle o;
    o.length_ = length;
    o.tabulated_ = false;
    o.entries_.push_back(make_entry(p));
    return o;
}

const StochasticOracle::Entry& StochasticOracle::entry(std::uint64_t query) const
{
    if (length_ < 64 && (query >> length_) != 0) {
        throw Error(ErrorCode::BadQueryLength, "query index outside {0,1}^" + std::to_string(length_));
    }
    return tabulated_ ? entries_[query] : entries_.front();
}

bool StochasticOracle::is_deterministic() const
{
    for (const auto& e : entries_) {
        if (!e.p.is_zero() && !e.p.is_one()) return false;
    }
    return true;
}

std::uint8_t StochasticOracle::sample(std::uint64_t query, Stream& rng) const
{
    const Entry& e = entry(query);
    if (e.certain) return 1;
    if (e.threshold == 0) return 0;
    return rng() < e.threshold ? 1 : 0;
}

UnitRational StochasticOracle::sample_mean(std::uint64_t query, std::uint64_t n, Stream& rng,
                                           SamplingMode mode) const
{
    if (n == 0) throw Error(ErrorCode::BadParameter, "sample_mean needs n >= 1");
    const Entry& e = entry(query);
    std::uint64_t k = 0;
    if (e.certain) {
        k = n;
    } else if (e.threshold == 0) {
        k = 0;
    } else if (mode == SamplingMode::Binomial) {
        std::binomial_distribution<long long> dist(static_cast<long long>(n), e.approx);
        k = static_cast<std::uint64_t>(dist(rng));
    } else {
        for (std::uint64_t i = 0; i < n; ++i) k += rng() < e.threshold ? 1 : 0;
    }
    return UnitRational(mpq_class(mpz_class(static_cast<unsigned long>(k)),
                                  mpz_class(static_cast<unsigned long>(n))));
}

StochasticOracle StochasticOracle::tabulate() const
{
    if (tabulated_) return *this;
    if (length_ > max_table_length) {
        throw Error(ErrorCode::TooLargeToEnumerate, "cannot tabulate an oracle with l > 20");
    }
    return table(length_, std::vector<UnitRational>(std::size_t{1} << length_, entries_.front().p));
}

StochasticOracle StochasticOracle::with_probability(std::uint64_t query, const UnitRational& p) const
{
    StochasticOracle t = tabulate();
    (void)t.entry(query);
    t.entries_[query] = make_entry(p);
    return t;
}

std::string StochasticOracle::describe() const
{
    if (!tabulated_) return "constant(l=" + std::to_string(length_) + ", p=" + entries_.front().p.str() + ")";
    std::string s = "table(l=" + std::to_string(length_) + ":";
    for (std::size_t z = 0; z < entries_.size(); ++z) {
        s += " " + bits_to_string(index_to_bits(z, length_)) + "=" + entries_[z].p.str();
    }
    return s + ")";
}

namespace {

std::uint64_t checked_index(const StochasticOracle& o, std::span<const std::uint8_t> z)
{
    if (z.size() != o.query_length()) {
        throw Error(ErrorCode::BadQueryLength, "query has " + std::to_string(z.size()) + " bits, oracle expects " +
                                                   std::to_string(o.query_length()));
    }
    return bits_to_index(z);
}

} // namespace

std::uint8_t oracle_sample(const StochasticOracle& o, std::span<const std::uint8_t> z, Stream& rng)
{
    return o.sample(checked_index(o, z), rng);
}

UnitRational sample_mean(const StochasticOracle& o, std::span<const std::uint8_t> z, std::uint64_t n,
                         Stream& rng, SamplingMode mode)
{
    return o.sample_mean(checked_index(o, z), n, rng, mode);
}

UnitRational oracle_distance(const StochasticOracle& o1, const StochasticOracle& o2)
{
    if (o1.query_length() != o2.query_length()) {
        throw Error(ErrorCode::BadQueryLength, "oracles have different query lengths");
    }
    // constant rules are expanded; l > 20 throws TooLargeToEnumerate
    const StochasticOracle a = o1.tabulate();
    const StochasticOracle b = o2.tabulate();
    UnitRational best;
    const std::uint64_t size = std::uint64_t{1} << a.query_length();
    for (std::uint64_t z = 0; z < size; ++z) {
        UnitRational d = abs_diff(a.probability(z), b.probability(z));
        if (d > best) best = std::move(d);
    }
    return best;
}

} // namespace debate
