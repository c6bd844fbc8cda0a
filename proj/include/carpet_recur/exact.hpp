#pragma once

// Exact arithmetic helpers: GMP rationals, decimal parsing, and products of
// rational powers that can be compared against 1 without rounding.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace carpet_recur {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "12", "-0.25", "1.5e-3000" or "3/7" into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a nonnegative decimal integer made of ASCII digits only.
std::int64_t parse_count(std::string_view text);

Integer ipow(long base, unsigned long exponent);
Rational rpow(const Rational& base, long exponent);

/// Natural log of a positive rational; stays finite for values far outside
/// the double range.
double log_of(const Rational& value);
double log_of(const Integer& value);

std::string to_string(const Rational& value);

struct PowerFactor {
    Rational base;      // > 0
    Rational exponent;  // arbitrary sign
};

/// A value of the form prod base_j^exponent_j with positive rational bases and
/// rational exponents. Comparisons against 1 are decided exactly whenever the
/// double estimate is too close to call.
class PowerProduct {
public:
    PowerProduct() = default;

    PowerProduct& multiply(const Rational& base, const Rational& exponent = 1);
    PowerProduct& multiply(const PowerProduct& other);

    [[nodiscard]] double log() const;

    /// Sign of log(value): -1 if value < 1, 0 if value == 1, +1 if value > 1.
    [[nodiscard]] int compare_to_one() const;

    [[nodiscard]] const std::vector<PowerFactor>& factors() const noexcept { return factors_; }

private:
    std::vector<PowerFactor> factors_;
};

/// Smallest integer k with base^k >= value, i.e. ceil(log_base value), with
/// exact resolution when log_base value is an integer.
long ceil_log(const PowerProduct& value, long base);

}  // namespace carpet_recur
