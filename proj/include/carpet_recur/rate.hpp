#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/exact.hpp"
#include "carpet_recur/symbolic.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace carpet_recur {

/// psi(n) = c * n^-gamma * m1^(-t n), parameters held as exact rationals.
struct PowerExpRate {
    Rational t;      // >= 0
    Rational gamma;
    Rational c = 1;  // > 0
};

/// Tabulated psi(n) > 0 for finitely many n; horizon is the largest n.
struct TableRate {
    std::map<long, Rational> values;
};

/// An extended exponent tau in [0, +inf], or the "negative" flag.
struct Tau {
    enum class Kind { Finite, Infinite, Negative };

    Kind kind = Kind::Finite;
    double value = 0.0;
    bool estimated = false;

    static Tau finite(double v) { return {Kind::Finite, v, false}; }
    static Tau infinite() { return {Kind::Infinite, 0.0, false}; }
    static Tau negative(double v) { return {Kind::Negative, v, false}; }

    /// Builds the tag from a plain number: < 0 -> Negative, +inf -> Infinite.
    static Tau from_value(double v);
};

/// psi(n) for one fixed n, compared exactly against rationals.
class RateThreshold {
public:
    explicit RateThreshold(PowerProduct inverse_psi);

    /// psi(n) > q, decided exactly.
    [[nodiscard]] bool exceeds(const Rational& q) const;
    /// psi(n) > num / den for den > 0.
    [[nodiscard]] bool exceeds(const Integer& num, const Integer& den) const;

    [[nodiscard]] double log_value() const noexcept { return log_psi_; }
    [[nodiscard]] const PowerProduct& inverse() const noexcept { return inverse_; }

private:
    PowerProduct inverse_;
    double log_psi_;
};

class RateFunction {
public:
    static RateFunction power_exp(Bases bases, PowerExpRate params);
    static RateFunction table(Bases bases, TableRate table);

    [[nodiscard]] const Bases& bases() const noexcept { return bases_; }
    [[nodiscard]] bool is_power_exp() const noexcept { return std::holds_alternative<PowerExpRate>(family_); }
    [[nodiscard]] const PowerExpRate* power_exp_params() const noexcept { return std::get_if<PowerExpRate>(&family_); }
    [[nodiscard]] const TableRate* table_values() const noexcept { return std::get_if<TableRate>(&family_); }
    [[nodiscard]] long horizon() const noexcept;

    /// 1 / psi(n) as an exact power product.
    [[nodiscard]] PowerProduct inverse_psi(long n) const;
    [[nodiscard]] double log_psi(long n) const;
    [[nodiscard]] RateThreshold threshold(long n) const;

    /// l_i(n) = -log_{m_i} psi(n).
    [[nodiscard]] double ell(Axis axis, long n) const;
    /// ceil(l_i(n)); exact even when l_i(n) is an integer.
    [[nodiscard]] long hat_ell(Axis axis, long n) const;

    /// Closed form for PowerExp; for tables the minimum of l_i(n)/n over the
    /// window [horizon/2, horizon], flagged as estimated.
    [[nodiscard]] Tau tau(Axis axis) const;

    /// Canonical text of the rate in the mini-grammar.
    [[nodiscard]] std::string describe() const;

private:
    RateFunction(Bases bases, std::variant<PowerExpRate, TableRate> family)
        : bases_(bases), family_(std::move(family)) {}

    void check_n(long n) const;

    Bases bases_;
    std::variant<PowerExpRate, TableRate> family_;
};

/// Reads a table file: optional "n,psi" header, then "n,psi" rows with
/// strictly increasing n and positive psi (decimal or p/q).
TableRate parse_rate_table(std::string_view text);

/// "powexp t=<real> gamma=<real> c=<real>" (gamma defaults to 0, c to 1, keys
/// in any order) or "table <path>".
RateFunction parse_rate_spec(std::string_view spec, Bases bases);

}  // namespace carpet_recur
