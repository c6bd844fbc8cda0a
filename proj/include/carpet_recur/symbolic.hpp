#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/exact.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace carpet_recur {

/// Selects the horizontal (base m1) or vertical (base m2) coordinate.
enum class Axis { First = 1, Second = 2 };

inline int base_of(const Bases& bases, Axis axis) noexcept {
    return axis == Axis::First ? bases.m1 : bases.m2;
}

Axis parse_axis(int index);

/// A depth-D truncation of a coded point. It stands for the whole cylinder of
/// infinite extensions, so geometric queries on it return enclosures.
class SymbolicPoint {
public:
    SymbolicPoint(Bases bases, std::vector<Digit> first, std::vector<Digit> second);

    [[nodiscard]] const Bases& bases() const noexcept { return bases_; }
    [[nodiscard]] std::size_t depth() const noexcept { return first_.size(); }
    [[nodiscard]] std::span<const Digit> digits(Axis axis) const noexcept {
        return axis == Axis::First ? std::span<const Digit>(first_) : std::span<const Digit>(second_);
    }

    /// True when every digit pair is a cell of the carpet.
    [[nodiscard]] bool lies_in(const Carpet& carpet) const noexcept;

    friend bool operator==(const SymbolicPoint&, const SymbolicPoint&) = default;

private:
    Bases bases_;
    std::vector<Digit> first_;
    std::vector<Digit> second_;
};

struct ExactPoint {
    Rational x;
    Rational y;
};

/// Digit words of possibly different lengths in the two coordinates.
struct CylinderWord {
    Bases bases;
    std::vector<Digit> first;
    std::vector<Digit> second;
};

/// Half-open rectangle [x_lo, x_hi) x [y_lo, y_hi).
struct Rect {
    Rational x_lo, x_hi, y_lo, y_hi;

    [[nodiscard]] bool contains(const ExactPoint& p) const {
        return x_lo <= p.x && p.x < x_hi && y_lo <= p.y && p.y < y_hi;
    }
    [[nodiscard]] bool contains(const Rect& r) const {
        return x_lo <= r.x_lo && r.x_hi <= x_hi && y_lo <= r.y_lo && r.y_hi <= y_hi;
    }
};

/// Closed interval [lo, hi] of exact rationals.
struct Interval {
    Rational lo;
    Rational hi;
};

/// sum_k digits[k] / base^(k+1).
Rational coding_value(std::span<const Digit> digits, int base);

ExactPoint coding_point(const SymbolicPoint& x);

/// n-fold digit shift (the expanding map T^n on codings).
SymbolicPoint shift(const SymbolicPoint& x, std::size_t n);

/// n2 = ceil(n1 * log_{m2} m1), resolved with integer powers: the smallest n2
/// with m2^n2 >= m1^n1.
std::size_t approx_square_height(const Bases& bases, std::size_t n1);

CylinderWord approx_square(const SymbolicPoint& x, std::size_t n1);

Rect cylinder_rect(const CylinderWord& w);

/// Enclosure of |x_axis - y_axis| over all infinite extensions of two points
/// of equal depth. Width is at most 2 * m^-D.
Interval coord_distance_bounds(const SymbolicPoint& x, const SymbolicPoint& y, Axis axis);

/// Enclosure of |x_axis - (T^n x)_axis| over all infinite extensions of x.
/// The tail beyond depth D is shared by x and T^n x, which makes this tighter
/// than bounding the two points separately:
///     x - T^n x = d0 - t (m^n - 1) m^-D,  t in [0, 1].
Interval return_distance_bounds(const SymbolicPoint& x, std::size_t n, Axis axis);

/// Same enclosure scaled by m^D, as integers: lo * m^D and hi * m^D.
struct ScaledInterval {
    Integer lo;
    Integer hi;
    Integer scale;  // m^D
};
ScaledInterval return_distance_bounds_scaled(const SymbolicPoint& x, std::size_t n, Axis axis);

char digit_char(Digit d);
Digit digit_value(char c, int base);

}  // namespace carpet_recur
