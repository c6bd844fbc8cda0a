#include "carpet_recur/error.hpp"
#include "carpet_recur/symbolic.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace carpet_recur;
using fixtures::digits;
using fixtures::point;

namespace {

std::vector<Digit> random_digits(std::mt19937_64& rng, int base, std::size_t len) {
    std::uniform_int_distribution<int> d(0, base - 1);
    std::vector<Digit> out(len);
    for (auto& x : out) x = static_cast<Digit>(d(rng));
    return out;
}

Rational power_inverse(int base, std::size_t exponent) {
    return Rational(Integer(1), ipow(base, exponent));
}

bool inside(const Interval& iv, const Rational& v) { return iv.lo <= v && v <= iv.hi; }

Rational ratio(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

TEST(SymbolicPoint, RejectsUnequalDepthAndBadDigits) {
    EXPECT_THROW(SymbolicPoint(Bases{3, 4}, digits("01"), digits("0")), Error);
    EXPECT_THROW(SymbolicPoint(Bases{3, 4}, digits("3"), digits("0")), Error);
    EXPECT_THROW(SymbolicPoint(Bases{3, 4}, {}, {}), Error);
}

TEST(SymbolicPoint, LiesIn) {
    auto c = fixtures::cantor();
    EXPECT_TRUE(point(c.bases(), "0220", "3130").lies_in(c));
    EXPECT_FALSE(point(c.bases(), "0120", "3130").lies_in(c));
    EXPECT_FALSE(point(c.bases(), "0220", "3120").lies_in(c));
}

TEST(Coding, Examples) {
    Bases b{3, 4};
    auto zero = coding_point(point(b, "0000", "0000"));
    EXPECT_EQ(zero.x, Rational(0));
    EXPECT_EQ(zero.y, Rational(0));
    auto p = coding_point(point(b, "2020", "3333"));
    EXPECT_EQ(p.x, Rational(20, 27));
    EXPECT_EQ(p.y, Rational(255, 256));
    auto half = coding_point(point(Bases{2, 2}, "1", "0"));
    EXPECT_EQ(half.x, Rational(1, 2));
}

TEST(Shift, Examples) {
    Bases b{3, 4};
    auto x = point(b, "100", "100");
    EXPECT_EQ(shift(x, 0), x);
    auto s = shift(x, 1);
    EXPECT_EQ(coding_point(s).x, Rational(0));
    EXPECT_EQ(coding_point(s).y, Rational(0));
    auto t = shift(point(b, "210", "000"), 2);
    ASSERT_EQ(t.depth(), 1u);
    EXPECT_EQ(t.digits(Axis::First)[0], 0);
    try {
        (void)shift(x, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShiftTooDeep);
    }
}

// coding(T x) = frac(m * coding(x)) up to the truncation tail.
TEST(Shift, MatchesExpandingMap) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Bases b{3, 5};
        const std::size_t depth = 1 + rng() % 12;
        if (depth < 2) continue;
        SymbolicPoint x(b, random_digits(rng, 3, depth), random_digits(rng, 5, depth));
        auto shifted = coding_point(shift(x, 1));
        auto orig = coding_point(x);
        Rational fx = orig.x * 3;
        fx -= Rational(Integer(fx.get_num() / fx.get_den()));
        Rational fy = orig.y * 5;
        fy -= Rational(Integer(fy.get_num() / fy.get_den()));
        Rational diff_x = abs(fx - shifted.x);
        Rational diff_y = abs(fy - shifted.y);
        EXPECT_LE(diff_x, 2 * power_inverse(3, depth - 1));
        EXPECT_LE(diff_y, 2 * power_inverse(5, depth - 1));
    }
}

TEST(ApproxSquare, Heights) {
    EXPECT_EQ(approx_square_height(Bases{3, 4}, 5), 4u);
    EXPECT_EQ(approx_square_height(Bases{3, 4}, 6), 5u);
    EXPECT_EQ(approx_square_height(Bases{2, 8}, 3), 1u);
    EXPECT_EQ(approx_square_height(Bases{2, 8}, 4), 2u);
    EXPECT_EQ(approx_square_height(Bases{2, 4}, 6), 3u);
    EXPECT_EQ(approx_square_height(Bases{3, 4}, 0), 0u);
    for (std::size_t n = 0; n < 50; ++n) EXPECT_EQ(approx_square_height(Bases{5, 5}, n), n);
}

// m2^-n2 <= m1^-n1 < m2^-(n2-1).
TEST(ApproxSquare, AspectAcrossBases) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int m1 = 2 + static_cast<int>(rng() % 10);
        int m2 = m1 + static_cast<int>(rng() % 20);
        Bases b{m1, m2};
        for (std::size_t n1 = 1; n1 <= 64; ++n1) {
            std::size_t n2 = approx_square_height(b, n1);
            ASSERT_GE(ipow(m2, n2), ipow(m1, n1)) << m1 << ' ' << m2 << ' ' << n1;
            ASSERT_LT(ipow(m2, n2 - 1), ipow(m1, n1)) << m1 << ' ' << m2 << ' ' << n1;
        }
    }
}

TEST(ApproxSquare, WordFromPoint) {
    auto x = point(Bases{3, 4}, "202020", "313131");
    auto w = approx_square(x, 5);
    EXPECT_EQ(w.first, digits("20202"));
    EXPECT_EQ(w.second, digits("3131"));
    EXPECT_THROW((void)approx_square(x, 7), Error);
}

TEST(CylinderRect, Examples) {
    Bases b{3, 4};
    auto whole = cylinder_rect(CylinderWord{b, {}, {}});
    EXPECT_EQ(whole.x_lo, Rational(0));
    EXPECT_EQ(whole.x_hi, Rational(1));
    EXPECT_EQ(whole.y_hi, Rational(1));
    auto corner = cylinder_rect(CylinderWord{b, digits("2"), digits("3")});
    EXPECT_EQ(corner.x_lo, Rational(2, 3));
    EXPECT_EQ(corner.y_lo, Rational(3, 4));
    EXPECT_EQ(corner.y_hi, Rational(1));
    auto r = cylinder_rect(CylinderWord{b, digits("11"), digits("0")});
    EXPECT_EQ(r.x_lo, Rational(4, 9));
    EXPECT_EQ(r.x_hi, Rational(5, 9));
    EXPECT_EQ(r.y_lo, Rational(0));
    EXPECT_EQ(r.y_hi, Rational(1, 4));
}

TEST(CylinderRect, Nests) {
    std::mt19937_64 rng(3);
    Bases b{2, 3};
    for (int trial = 0; trial < 200; ++trial) {
        CylinderWord w{b, random_digits(rng, 2, rng() % 6), random_digits(rng, 3, rng() % 6)};
        auto parent = cylinder_rect(w);
        CylinderWord longer = w;
        if (rng() % 2) longer.first.push_back(static_cast<Digit>(rng() % 2));
        else longer.second.push_back(static_cast<Digit>(rng() % 3));
        EXPECT_TRUE(parent.contains(cylinder_rect(longer)));
    }
}

TEST(DistanceBounds, IdenticalPoints) {
    auto x = point(Bases{3, 4}, "0202", "1313");
    auto iv = coord_distance_bounds(x, x, Axis::First);
    EXPECT_EQ(iv.lo, Rational(0));
    EXPECT_LE(iv.hi, 2 * power_inverse(3, 4));
}

TEST(DistanceBounds, SeparatedPoints) {
    Bases b{3, 4};
    auto x = point(b, "0000", "0000");
    auto y = point(b, "2000", "0000");
    auto iv = coord_distance_bounds(x, y, Axis::First);
    EXPECT_EQ(iv.lo, Rational(2, 3) - Rational(1, 81));
    EXPECT_EQ(iv.hi, Rational(2, 3) + Rational(1, 81));
}

// Every infinite extension of both points lands inside the enclosure.
TEST(DistanceBounds, SoundAgainstExtensions) {
    Bases b{2, 3};
    std::mt19937_64 rng(5);
    const std::size_t depth = 3;
    const std::size_t full = 6;
    for (int trial = 0; trial < 40; ++trial) {
        SymbolicPoint x(b, random_digits(rng, 2, depth), random_digits(rng, 3, depth));
        SymbolicPoint y(b, random_digits(rng, 2, depth), random_digits(rng, 3, depth));
        for (Axis axis : {Axis::First, Axis::Second}) {
            const int m = base_of(b, axis);
            auto iv = coord_distance_bounds(x, y, axis);
            for (int ext = 0; ext < 200; ++ext) {
                auto dx = std::vector<Digit>(x.digits(axis).begin(), x.digits(axis).end());
                auto dy = std::vector<Digit>(y.digits(axis).begin(), y.digits(axis).end());
                auto tx = random_digits(rng, m, full - depth);
                auto ty = random_digits(rng, m, full - depth);
                dx.insert(dx.end(), tx.begin(), tx.end());
                dy.insert(dy.end(), ty.begin(), ty.end());
                Rational vx = coding_value(dx, m);
                Rational vy = coding_value(dy, m);
                const Rational tail = power_inverse(m, full);
                for (int cx = 0; cx < 2; ++cx)
                    for (int cy = 0; cy < 2; ++cy)
                        ASSERT_TRUE(inside(iv, abs((vx + cx * tail) - (vy + cy * tail))));
            }
        }
    }
}

TEST(ReturnDistance, SharedTailIsSoundAndTight) {
    Bases b{2, 3};
    std::mt19937_64 rng(9);
    const std::size_t depth = 5;
    for (int trial = 0; trial < 60; ++trial) {
        SymbolicPoint x(b, random_digits(rng, 2, depth), random_digits(rng, 3, depth));
        const std::size_t n = 1 + rng() % (depth - 1);
        for (Axis axis : {Axis::First, Axis::Second}) {
            const int m = base_of(b, axis);
            auto iv = return_distance_bounds(x, n, axis);
            auto scaled = return_distance_bounds_scaled(x, n, axis);
            EXPECT_EQ(scaled.scale, ipow(m, depth));
            EXPECT_EQ(ratio(scaled.lo, scaled.scale), iv.lo);
            EXPECT_EQ(ratio(scaled.hi, scaled.scale), iv.hi);
            EXPECT_LE(iv.hi - iv.lo, ratio(ipow(m, n) - 1, ipow(m, depth)));
            for (int ext = 0; ext < 100; ++ext) {
                auto d = std::vector<Digit>(x.digits(axis).begin(), x.digits(axis).end());
                auto tail = random_digits(rng, m, 4);
                d.insert(d.end(), tail.begin(), tail.end());
                std::vector<Digit> shifted(d.begin() + static_cast<std::ptrdiff_t>(n), d.end());
                Rational vx = coding_value(d, m);
                Rational vs = coding_value(shifted, m);
                for (int c = 0; c < 2; ++c) {
                    Rational ex = vx + c * power_inverse(m, d.size());
                    Rational es = vs + c * power_inverse(m, shifted.size());
                    ASSERT_TRUE(inside(iv, abs(ex - es)));
                }
            }
        }
    }
}

TEST(ReturnDistance, PeriodicPointHasZeroLowerBound) {
    auto x = point(Bases{3, 4}, "202020", "131313");
    auto iv = return_distance_bounds(x, 2, Axis::First);
    EXPECT_EQ(iv.lo, Rational(0));
}

TEST(DigitChars, RoundTrip) {
    for (int d = 0; d < kMaxBase; ++d)
        EXPECT_EQ(digit_value(digit_char(static_cast<Digit>(d)), kMaxBase), d);
    EXPECT_EQ(digit_char(10), 'a');
    EXPECT_THROW((void)digit_value('5', 4), Error);
    EXPECT_THROW((void)digit_value('#', 36), Error);
}
