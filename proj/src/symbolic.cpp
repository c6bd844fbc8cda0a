#include "carpet_recur/symbolic.hpp"

#include "carpet_recur/error.hpp"

#include <cmath>

namespace carpet_recur {

Axis parse_axis(int index) {
    if (index == 1) return Axis::First;
    if (index == 2) return Axis::Second;
    fail(ErrorCode::InvalidArgument, "coordinate index must be 1 or 2, got " + std::to_string(index));
}

SymbolicPoint::SymbolicPoint(Bases bases, std::vector<Digit> first, std::vector<Digit> second)
    : bases_(bases), first_(std::move(first)), second_(std::move(second)) {
    if (first_.size() != second_.size()) {
        fail(ErrorCode::DepthMismatch, "digit sequences of a point must have equal length");
    }
    if (first_.empty()) fail(ErrorCode::InvalidArgument, "a symbolic point needs depth >= 1");
    for (Digit d : first_) {
        if (d >= bases_.m1) fail(ErrorCode::DigitOutOfRange, "first-coordinate digit out of range");
    }
    for (Digit d : second_) {
        if (d >= bases_.m2) fail(ErrorCode::DigitOutOfRange, "second-coordinate digit out of range");
    }
}

bool SymbolicPoint::lies_in(const Carpet& carpet) const noexcept {
    if (carpet.bases() != bases_) return false;
    for (std::size_t k = 0; k < first_.size(); ++k) {
        if (!carpet.contains({first_[k], second_[k]})) return false;
    }
    return true;
}

namespace {

// sum_{k < digits.size()} digits[k] * base^(size - 1 - k)
Integer horner(std::span<const Digit> digits, int base) {
    Integer acc = 0;
    for (Digit d : digits) {
        acc *= base;
        acc += d;
    }
    return acc;
}

}  // namespace

Rational coding_value(std::span<const Digit> digits, int base) {
    Rational value(horner(digits, base), ipow(base, digits.size()));
    value.canonicalize();
    return value;
}

ExactPoint coding_point(const SymbolicPoint& x) {
    return {coding_value(x.digits(Axis::First), x.bases().m1),
            coding_value(x.digits(Axis::Second), x.bases().m2)};
}

SymbolicPoint shift(const SymbolicPoint& x, std::size_t n) {
    if (n >= x.depth()) {
        fail(ErrorCode::ShiftTooDeep, "shift by " + std::to_string(n) + " needs depth > " + std::to_string(n) +
                                          ", point has depth " + std::to_string(x.depth()));
    }
    auto d1 = x.digits(Axis::First);
    auto d2 = x.digits(Axis::Second);
    return SymbolicPoint(x.bases(), std::vector<Digit>(d1.begin() + static_cast<long>(n), d1.end()),
                         std::vector<Digit>(d2.begin() + static_cast<long>(n), d2.end()));
}

std::size_t approx_square_height(const Bases& bases, std::size_t n1) {
    if (bases.m1 == bases.m2) return n1;
    PowerProduct target;
    target.multiply(Rational(bases.m1), Rational(static_cast<long>(n1)));
    long n2 = ceil_log(target, bases.m2);
    return static_cast<std::size_t>(n2);
}

CylinderWord approx_square(const SymbolicPoint& x, std::size_t n1) {
    std::size_t n2 = approx_square_height(x.bases(), n1);
    if (n1 > x.depth() || n2 > x.depth()) {
        fail(ErrorCode::DepthExceeded, "approximate square of level " + std::to_string(n1) +
                                           " needs depth " + std::to_string(std::max(n1, n2)));
    }
    auto d1 = x.digits(Axis::First);
    auto d2 = x.digits(Axis::Second);
    return {x.bases(), std::vector<Digit>(d1.begin(), d1.begin() + static_cast<long>(n1)),
            std::vector<Digit>(d2.begin(), d2.begin() + static_cast<long>(n2))};
}

Rect cylinder_rect(const CylinderWord& w) {
    Rect r;
    r.x_lo = coding_value(w.first, w.bases.m1);
    r.x_hi = r.x_lo + Rational(1, ipow(w.bases.m1, w.first.size()));
    r.y_lo = coding_value(w.second, w.bases.m2);
    r.y_hi = r.y_lo + Rational(1, ipow(w.bases.m2, w.second.size()));
    r.x_hi.canonicalize();
    r.y_hi.canonicalize();
    return r;
}

Interval coord_distance_bounds(const SymbolicPoint& x, const SymbolicPoint& y, Axis axis) {
    if (x.depth() != y.depth()) fail(ErrorCode::DepthMismatch, "distance bounds need equal depths");
    if (x.bases() != y.bases()) fail(ErrorCode::DepthMismatch, "distance bounds need equal bases");
    int m = base_of(x.bases(), axis);
    // Each truncation undershoots its extensions by a tail in [0, m^-D], so the
    // difference of the two tails lies in [-m^-D, m^-D].
    Integer scale = ipow(m, x.depth());
    Integer diff = horner(x.digits(axis), m) - horner(y.digits(axis), m);
    Integer magnitude = abs(diff);
    Integer lo = magnitude > 1 ? Integer(magnitude - 1) : Integer(0);
    Integer hi = magnitude + 1;
    Interval out{Rational(lo, scale), Rational(hi, scale)};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

ScaledInterval return_distance_bounds_scaled(const SymbolicPoint& x, std::size_t n, Axis axis) {
    if (n >= x.depth()) {
        fail(ErrorCode::ShiftTooDeep, "return distance at time " + std::to_string(n) + " needs depth > " +
                                          std::to_string(n));
    }
    int m = base_of(x.bases(), axis);
    auto digits = x.digits(axis);
    const std::size_t depth = digits.size();
    Integer whole = horner(digits, m);
    Integer tail = horner(digits.subspan(n), m);
    Integer mn = ipow(m, n);
    // Scaled by m^D: x_trunc = whole, (T^n x)_trunc = m^n * tail, and the
    // common tail t in [0, 1] moves the difference by -t (m^n - 1).
    Integer e = whole - mn * tail;
    Integer width = mn - 1;
    ScaledInterval out;
    out.scale = ipow(m, depth);
    Integer low_end = e - width;
    if (low_end >= 0) {
        out.lo = low_end;
        out.hi = e;
    } else if (e <= 0) {
        out.lo = -e;
        out.hi = -low_end;
    } else {
        out.lo = 0;
        out.hi = e > -low_end ? e : Integer(-low_end);
    }
    return out;
}

Interval return_distance_bounds(const SymbolicPoint& x, std::size_t n, Axis axis) {
    auto scaled = return_distance_bounds_scaled(x, n, axis);
    Interval out{Rational(scaled.lo, scaled.scale), Rational(scaled.hi, scaled.scale)};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

char digit_char(Digit d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

Digit digit_value(char c, int base) {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    if (v < 0 || v >= base) {
        fail(ErrorCode::Parse, std::string("invalid base-") + std::to_string(base) + " digit '" + c + "'");
    }
    return static_cast<Digit>(v);
}

}  // namespace carpet_recur
