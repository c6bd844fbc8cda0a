#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/rate.hpp"
#include "carpet_recur/symbolic.hpp"

#include <cstdint>
#include <vector>

namespace carpet_recur {

enum class Recurrence { Yes, No, Unknown };

std::string_view recurrence_name(Recurrence r) noexcept;

/// Decides |x_i - (T^n x)_i| < psi(n) for both coordinates over every infinite
/// extension of x. Unknown when the depth is too small to settle the strict
/// inequality. Throws ShiftTooDeep unless n < depth(x).
Recurrence is_recurrent_at(const SymbolicPoint& x, std::size_t n, const RateThreshold& psi);
Recurrence is_recurrent_at(const SymbolicPoint& x, std::size_t n, const RateFunction& rate);

/// The open box around the fixed point of the cylinder branch of w in A^n,
///     { p : |p_i - c_i| < psi(n) / (m_i^n - 1) },
/// which contains J(w). psi(n) need not be rational, so membership tests go
/// through the exact threshold rather than stored endpoints.
class FixedPointBox {
public:
    FixedPointBox(const CylinderWord& w, RateThreshold psi);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    /// pi(w^infinity), the fixed point of the branch.
    [[nodiscard]] const ExactPoint& center() const noexcept { return center_; }
    /// The cylinder rectangle I(w).
    [[nodiscard]] const Rect& cylinder() const noexcept { return cylinder_; }
    /// True when the box sticks out of I(w); J(w) is then the clipped part.
    [[nodiscard]] bool clipped() const noexcept { return clipped_; }
    [[nodiscard]] double half_width(Axis axis) const;

    [[nodiscard]] bool contains(const ExactPoint& p) const;
    /// Whether [lo, hi) meets the open interval of the box along `axis`.
    [[nodiscard]] bool meets(Axis axis, const Rational& lo, const Rational& hi) const;
    [[nodiscard]] bool meets(const Rect& r) const { return meets(Axis::First, r.x_lo, r.x_hi) && meets(Axis::Second, r.y_lo, r.y_hi); }
    /// Whether the box lies inside the rectangle of side 4 psi(n) m_i^-n
    /// centred at the fixed point (open boxes, so inclusion of closures).
    [[nodiscard]] bool inside_cover_rectangle() const;

private:
    [[nodiscard]] bool within(Axis axis, const Rational& offset) const;

    std::size_t n_;
    Bases bases_;
    RateThreshold psi_;
    Integer numer_[2];  // W_i, so c_i = W_i / (m_i^n - 1)
    Integer denom_[2];  // m_i^n - 1
    ExactPoint center_;
    Rect cylinder_;
    bool clipped_ = false;
};

FixedPointBox fixed_point_rect(const CylinderWord& w, const RateFunction& rate);

/// L_{i,n} = ceil(-log_{m1}(4 psi(n) m_i^-n)), exact at integer boundaries.
long covering_level(const RateFunction& rate, std::size_t n, Axis axis);

struct CoverBudget {
    std::uint64_t cylinders = 1'000'000;
    std::uint64_t square_tests = 10'000'000;

    /// Defaults, overridden by CARPET_RECUR_BUDGET="<cylinders>[,<tests>]".
    static CoverBudget from_env();
};

/// Number of distinct level-`level` approximate squares meeting K, I(w) and
/// the fixed-point box of some w in A^n. Throws BudgetExceeded.
std::uint64_t exact_cover_count(const Carpet& carpet, const RateFunction& rate, std::size_t n, long level,
                                const CoverBudget& budget = CoverBudget::from_env(), unsigned threads = 1);

/// Printed upper bound on the number of level-L_{i,n} approximate squares
/// needed to cover W_n. Uniform-fibre carpets only.
double paper_cover_bound(const Carpet& carpet, const RateFunction& rate, std::size_t n, Axis axis);

struct CoverReport {
    std::size_t n = 0;
    Axis axis = Axis::First;
    long level = 0;
    std::uint64_t exact_count = 0;
    double bound = 0.0;
    double slack = 0.0;  // bound / exact_count
    bool satisfied = false;
};

std::vector<CoverReport> verify_covering(const Carpet& carpet, const RateFunction& rate, std::size_t n_first,
                                         std::size_t n_last, Axis axis,
                                         const CoverBudget& budget = CoverBudget::from_env(), unsigned threads = 1);

}  // namespace carpet_recur
