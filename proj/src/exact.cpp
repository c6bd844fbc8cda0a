#include "carpet_recur/exact.hpp"

#include "carpet_recur/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <optional>

namespace carpet_recur {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
        case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
        case ErrorCode::DuplicatePair: return "DuplicatePair";
        case ErrorCode::BadBases: return "BadBases";
        case ErrorCode::ShiftTooDeep: return "ShiftTooDeep";
        case ErrorCode::DepthExceeded: return "DepthExceeded";
        case ErrorCode::DepthMismatch: return "DepthMismatch";
        case ErrorCode::HorizonExceeded: return "HorizonExceeded";
        case ErrorCode::NonUniformFibre: return "NonUniformFibre";
        case ErrorCode::InvalidTauPair: return "InvalidTauPair";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::DepthTooSmall: return "DepthTooSmall";
        case ErrorCode::ZeroConditional: return "ZeroConditional";
        case ErrorCode::UnsupportedLength: return "UnsupportedLength";
        case ErrorCode::InsufficientLevels: return "InsufficientLevels";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Integer digits_to_integer(std::string_view digits) {
    if (digits.empty()) return 0;
    return Integer(std::string(digits), 10);
}

[[noreturn]] void bad_number(std::string_view text) {
    fail(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad_number(text);

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (num.empty() || den.empty()) bad_number(text);
        for (char c : num) if (!is_digit(c)) bad_number(text);
        for (char c : den) if (!is_digit(c)) bad_number(text);
        Integer d = digits_to_integer(den);
        if (d == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        result = Rational(digits_to_integer(num), d);
        result.canonicalize();
    } else {
        std::size_t pos = 0;
        std::size_t int_begin = pos;
        while (pos < s.size() && is_digit(s[pos])) ++pos;
        auto int_part = s.substr(int_begin, pos - int_begin);
        std::string_view frac_part;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            std::size_t frac_begin = pos;
            while (pos < s.size() && is_digit(s[pos])) ++pos;
            frac_part = s.substr(frac_begin, pos - frac_begin);
        }
        if (int_part.empty() && frac_part.empty()) bad_number(text);
        long exponent = 0;
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            ++pos;
            bool exp_negative = false;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                exp_negative = s[pos] == '-';
                ++pos;
            }
            std::size_t exp_begin = pos;
            while (pos < s.size() && is_digit(s[pos])) ++pos;
            auto exp_digits = s.substr(exp_begin, pos - exp_begin);
            if (exp_digits.empty() || exp_digits.size() > 7) bad_number(text);
            exponent = std::stol(std::string(exp_digits));
            if (exp_negative) exponent = -exponent;
        }
        if (pos != s.size()) bad_number(text);

        Integer mantissa = digits_to_integer(std::string(int_part) + std::string(frac_part));
        exponent -= static_cast<long>(frac_part.size());
        if (exponent >= 0) {
            result = Rational(mantissa * ipow(10, static_cast<unsigned long>(exponent)));
        } else {
            result = Rational(mantissa, ipow(10, static_cast<unsigned long>(-exponent)));
            result.canonicalize();
        }
    }
    if (negative) result = -result;
    return result;
}

std::int64_t parse_count(std::string_view text) {
    if (text.empty() || text.size() > 18) bad_number(text);
    std::int64_t value = 0;
    for (char c : text) {
        if (!is_digit(c)) bad_number(text);
        value = value * 10 + (c - '0');
    }
    return value;
}

Integer ipow(long base, unsigned long exponent) {
    Integer result;
    Integer b = base;
    mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
    return result;
}

Rational rpow(const Rational& base, long exponent) {
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                   : static_cast<unsigned long>(exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    if (exponent < 0) {
        if (num == 0) fail(ErrorCode::InvalidArgument, "zero raised to a negative power");
        std::swap(num, den);
    }
    Rational result(num, den);
    result.canonicalize();
    return result;
}

double log_of(const Integer& value) {
    if (value <= 0) fail(ErrorCode::InvalidArgument, "logarithm of a nonpositive number");
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const Rational& value) {
    if (value <= 0) fail(ErrorCode::InvalidArgument, "logarithm of a nonpositive number");
    Integer num = value.get_num();
    Integer den = value.get_den();
    return log_of(num) - log_of(den);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

PowerProduct& PowerProduct::multiply(const Rational& base, const Rational& exponent) {
    if (base <= 0) fail(ErrorCode::InvalidArgument, "power product base must be positive");
    if (base == 1 || exponent == 0) return *this;
    factors_.push_back({base, exponent});
    return *this;
}

PowerProduct& PowerProduct::multiply(const PowerProduct& other) {
    for (const auto& f : other.factors_) factors_.push_back(f);
    return *this;
}

double PowerProduct::log() const {
    double sum = 0.0;
    for (const auto& f : factors_) sum += f.exponent.get_d() * log_of(f.base);
    return sum;
}

namespace {

std::size_t bit_length(const Integer& v) {
    return v == 0 ? 1 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Raises every factor to a common integer power Q so that all exponents become
// integers, then compares the two sides as exact rationals.
std::optional<int> compare_exactly(const std::vector<PowerFactor>& factors) {
    constexpr double kMaxBits = 1 << 25;
    Integer q = 1;
    for (const auto& f : factors) {
        Integer den = f.exponent.get_den();
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
        if (q > Integer(1) << 24) return std::nullopt;
    }
    double bits = 0.0;
    for (const auto& f : factors) {
        Integer k = f.exponent.get_num() * (q / f.exponent.get_den());
        bits += std::fabs(k.get_d()) *
                static_cast<double>(bit_length(f.base.get_num()) + bit_length(f.base.get_den()));
        if (bits > kMaxBits) return std::nullopt;
    }
    Rational lhs = 1;
    Rational rhs = 1;
    for (const auto& f : factors) {
        Integer k = f.exponent.get_num() * (q / f.exponent.get_den());
        if (k > 0) {
            lhs *= rpow(f.base, k.get_si());
        } else {
            rhs *= rpow(f.base, -k.get_si());
        }
    }
    int c = cmp(lhs, rhs);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_high_precision(const std::vector<PowerFactor>& factors) {
    using Float = boost::multiprecision::cpp_bin_float_100;
    auto to_float = [](const Integer& v) { return Float(v.get_str(10)); };
    Float sum = 0;
    Float magnitude = 0;
    for (const auto& f : factors) {
        Float log_base = boost::multiprecision::log(to_float(f.base.get_num())) -
                         boost::multiprecision::log(to_float(f.base.get_den()));
        Float exponent = to_float(f.exponent.get_num()) / to_float(f.exponent.get_den());
        Float term = exponent * log_base;
        sum += term;
        magnitude += boost::multiprecision::abs(term);
    }
    if (boost::multiprecision::abs(sum) <= Float("1e-80") * (1 + magnitude)) return 0;
    return sum < 0 ? -1 : 1;
}

}  // namespace

int PowerProduct::compare_to_one() const {
    double sum = 0.0;
    double magnitude = 0.0;
    for (const auto& f : factors_) {
        double term = f.exponent.get_d() * log_of(f.base);
        sum += term;
        magnitude += std::fabs(term);
    }
    if (factors_.empty()) return 0;
    if (std::isfinite(sum) && std::fabs(sum) > 1e-9 * (1.0 + magnitude)) return sum < 0 ? -1 : 1;
    if (auto exact = compare_exactly(factors_)) return *exact;
    return compare_high_precision(factors_);
}

long ceil_log(const PowerProduct& value, long base) {
    if (base < 2) fail(ErrorCode::InvalidArgument, "logarithm base must be at least 2");
    double estimate = value.log() / std::log(static_cast<double>(base));
    if (!std::isfinite(estimate) || std::fabs(estimate) > 1e15) {
        fail(ErrorCode::InvalidArgument, "logarithm out of representable range");
    }
    auto power_covers = [&](long k) {
        PowerProduct scaled = value;
        scaled.multiply(Rational(base), Rational(-k));
        return scaled.compare_to_one() <= 0;
    };
    long k = static_cast<long>(std::ceil(estimate));
    while (!power_covers(k)) ++k;
    while (power_covers(k - 1)) --k;
    return k;
}

}  // namespace carpet_recur
