#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace debate {

/// Exact probability in [0, 1], stored as a reduced GMP rational.
///
/// Every threshold comparison the verifier and the honest provers make
/// (1/(4d), 1/(2d), z <= p) goes through this type, so nothing in the
/// protocol path depends on floating-point rounding.
class UnitRational {
public:
    UnitRational() = default;
    UnitRational(std::int64_t numerator, std::int64_t denominator);
    explicit UnitRational(const mpq_class& value);

    static UnitRational zero() { return {}; }
    static UnitRational one() { return UnitRational(1, 1); }
    static UnitRational bit(std::uint64_t b) { return b ? one() : zero(); }

    /// Accepts "n/d", integers "0"/"1" and decimals such as "0.125".
    static UnitRational parse(std::string_view text);

    const mpq_class& value() const noexcept { return value_; }
    double to_double() const { return value_.get_d(); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }

    /// Canonical "n/d" form (always with a denominator).
    std::string str() const;

    friend bool operator==(const UnitRational& a, const UnitRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const UnitRational& a, const UnitRational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

UnitRational abs_diff(const UnitRational& a, const UnitRational& b);

/// p + delta clipped to [0, 1]; delta may be negative.
UnitRational shift_clipped(const UnitRational& p, const mpq_class& delta);

/// Parses a signed rational ("-1/300", "0.25"); no range restriction.
mpq_class parse_rational(std::string_view text);

/// Fraction n / 2^64. Addition wraps, which is exactly addition mod 1.
class UnitFixed {
public:
    constexpr UnitFixed() = default;
    constexpr explicit UnitFixed(std::uint64_t raw) : raw_(raw) {}

    /// Nearest representable value to q, reduced mod 1 (so 1 maps to 0).
    static UnitFixed from_rational(const mpq_class& q);

    constexpr std::uint64_t raw() const noexcept { return raw_; }
    double to_double() const { return static_cast<double>(raw_) * 0x1p-64; }
    UnitRational to_rational() const;

    /// Exact test raw / 2^64 <= p.
    bool at_most(const UnitRational& p) const;

    friend constexpr bool operator==(UnitFixed, UnitFixed) = default;

private:
    std::uint64_t raw_ = 0;
};

constexpr UnitFixed mod1_add(UnitFixed a, UnitFixed b)
{
    return UnitFixed(a.raw() + b.raw());
}

} // namespace debate
