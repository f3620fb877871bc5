#include "debate/rational.hpp"

#include <cctype>

#include "debate/error.hpp"

namespace debate {

namespace {

mpz_class two_pow_64()
{
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
    return r;
}

void require_unit(const mpq_class& q, std::string_view origin)
{
    if (q < 0 || q > 1) {
        throw Error(ErrorCode::BadParameter,
                    "probability out of [0,1]: " + std::string(origin));
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

UnitRational::UnitRational(std::int64_t numerator, std::int64_t denominator)
{
    if (denominator <= 0) {
        throw Error(ErrorCode::BadParameter, "denominator must be positive");
    }
    value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
    value_.canonicalize();
    require_unit(value_, std::to_string(numerator) + "/" + std::to_string(denominator));
}

UnitRational::UnitRational(const mpq_class& value) : value_(value)
{
    value_.canonicalize();
    require_unit(value_, value_.get_str());
}

mpq_class parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    mpq_class q;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = trim(s.substr(0, slash));
        const auto den = trim(s.substr(slash + 1));
        if (!all_digits(num) || !all_digits(den)) {
            throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
        }
        const mpz_class d{std::string(den)};
        if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        q = mpq_class(mpz_class{std::string(num)}, d);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty())) {
            throw Error(ErrorCode::ParseError, "bad decimal '" + std::string(text) + "'");
        }
        mpz_class scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
        const mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
        q = mpq_class(w * scale + f, scale);
    } else {
        if (!all_digits(s)) throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
        q = mpq_class(mpz_class(std::string(s)));
    }
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

UnitRational UnitRational::parse(std::string_view text)
{
    const mpq_class q = parse_rational(text);
    if (q < 0 || q > 1) {
        throw Error(ErrorCode::ParseError, "probability out of [0,1]: '" + std::string(text) + "'");
    }
    return UnitRational(q);
}

std::string UnitRational::str() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

UnitRational abs_diff(const UnitRational& a, const UnitRational& b)
{
    mpq_class d = a.value() - b.value();
    return UnitRational(mpq_class(abs(d)));
}

UnitRational shift_clipped(const UnitRational& p, const mpq_class& delta)
{
    mpq_class v = p.value() + delta;
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    return UnitRational(v);
}

UnitFixed UnitFixed::from_rational(const mpq_class& q)
{
    // floor(q * 2^64 + 1/2) mod 2^64
    const mpz_class scale = two_pow_64();
    mpq_class scaled = q * mpq_class(scale) + mpq_class(1, 2);
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), scale.get_mpz_t());
    static_assert(sizeof(unsigned long) == 8, "mpz conversion assumes 64-bit unsigned long");
    return UnitFixed(r.get_ui());
}

UnitRational UnitFixed::to_rational() const
{
    mpq_class q(mpz_class(static_cast<unsigned long>(raw_)), two_pow_64());
    q.canonicalize();
    return UnitRational(q);
}

bool UnitFixed::at_most(const UnitRational& p) const
{
    // raw * den <= num * 2^64
    const mpz_class lhs = mpz_class(static_cast<unsigned long>(raw_)) * p.value().get_den();
    mpz_class rhs = p.value().get_num();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 64);
    return lhs <= rhs;
}

} // namespace debate
