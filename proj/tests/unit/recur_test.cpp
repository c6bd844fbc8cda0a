#include "carpet_recur/error.hpp"
#include "carpet_recur/recur.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace carpet_recur;
using fixtures::digits;
using fixtures::point;
using fixtures::powexp;

TEST(IsRecurrent, PeriodicPointReturns) {
    auto c = fixtures::cantor();
    auto x = point(c.bases(), "20202020202020202020", "13131313131313131313");
    auto rate = powexp(c, "1");
    EXPECT_EQ(is_recurrent_at(x, 2, rate), Recurrence::Yes);
    EXPECT_EQ(is_recurrent_at(x, 4, rate), Recurrence::Yes);
    EXPECT_EQ(is_recurrent_at(x, 1, rate), Recurrence::No);
}

TEST(IsRecurrent, ConstantOneAlwaysReturns) {
    auto c = fixtures::cantor();
    auto x = point(c.bases(), "02002220", "31030113");
    auto one = powexp(c, "0");
    for (std::size_t n = 1; n < x.depth(); ++n) EXPECT_EQ(is_recurrent_at(x, n, one), Recurrence::Yes) << n;
}

TEST(IsRecurrent, PerturbedDigitFails) {
    auto c = fixtures::cantor();
    const std::size_t n = 3;
    auto x = point(c.bases(), "00020000", "00000000");
    auto rate = powexp(c, "1", "0", "1/9");  // psi(n) = 3^-(n+2)
    EXPECT_EQ(is_recurrent_at(x, n, rate), Recurrence::No);
}

TEST(IsRecurrent, ShallowPointIsUnknown) {
    auto c = fixtures::cantor();
    auto x = point(c.bases(), "0000", "0000");
    auto rate = powexp(c, "5");  // psi(1) = 3^-5 < 2/81
    EXPECT_EQ(is_recurrent_at(x, 1, rate), Recurrence::Unknown);
    auto deep = point(c.bases(), "0000000000", "0000000000");
    EXPECT_EQ(is_recurrent_at(deep, 1, rate), Recurrence::Yes);
}

TEST(IsRecurrent, ShiftTooDeep) {
    auto c = fixtures::cantor();
    auto x = point(c.bases(), "000", "000");
    try {
        (void)is_recurrent_at(x, 3, powexp(c, "1"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShiftTooDeep);
    }
    EXPECT_EQ(recurrence_name(Recurrence::Unknown), "unknown");
}

TEST(FixedPointBox, Centers) {
    Bases b{2, 3};
    RateFunction rate = RateFunction::power_exp(b, {Rational(3), Rational(0), Rational(1)});
    auto box = fixed_point_rect(CylinderWord{b, digits("10"), digits("21")}, rate);
    EXPECT_EQ(box.center().x, Rational(2, 3));
    EXPECT_EQ(box.center().y, Rational(7, 8));

    auto c = fixtures::cantor();
    auto corner = fixed_point_rect(CylinderWord{c.bases(), digits("2"), digits("3")}, powexp(c, "1"));
    EXPECT_EQ(corner.center().x, Rational(1));
    EXPECT_EQ(corner.center().y, Rational(1));
    auto origin = fixed_point_rect(CylinderWord{c.bases(), digits("000"), digits("000")}, powexp(c, "1"));
    EXPECT_EQ(origin.center().x, Rational(0));
    EXPECT_TRUE(origin.clipped());
}

TEST(FixedPointBox, MembershipIsOpenAndExact) {
    auto c = fixtures::cantor();
    // psi(1) = 1/3: half widths 1/6 and 1/9 around (1, 1).
    auto box = fixed_point_rect(CylinderWord{c.bases(), digits("2"), digits("3")}, powexp(c, "1"));
    EXPECT_TRUE(box.clipped());
    EXPECT_NEAR(box.half_width(Axis::First), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(box.half_width(Axis::Second), 1.0 / 9.0, 1e-15);
    EXPECT_TRUE(box.contains({Rational(9, 10), Rational(95, 100)}));
    EXPECT_FALSE(box.contains({Rational(5, 6), Rational(95, 100)}));
    EXPECT_FALSE(box.contains({Rational(9, 10), Rational(8, 9)}));
    EXPECT_FALSE(box.meets(Axis::First, Rational(0), Rational(5, 6)));
    EXPECT_TRUE(box.meets(Axis::First, Rational(0), Rational(5, 6) + Rational(1, 1000000)));
    EXPECT_FALSE(box.meets(Axis::First, Rational(7, 6), Rational(2)));
    EXPECT_TRUE(box.meets(Axis::Second, Rational(1, 2), Rational(2)));
    EXPECT_TRUE(box.inside_cover_rectangle());
}

TEST(FixedPointBox, InteriorBoxIsNotClipped) {
    auto c = fixtures::two_three();
    RateFunction rate = RateFunction::power_exp(c.bases(), {Rational(3), Rational(0), Rational(1)});
    auto box = fixed_point_rect(CylinderWord{c.bases(), digits("01"), digits("21")}, rate);
    EXPECT_EQ(box.center().x, Rational(1, 3));
    EXPECT_EQ(box.center().y, Rational(7, 8));
    EXPECT_FALSE(box.clipped());
    EXPECT_TRUE(box.cylinder().contains(box.center()));
    EXPECT_TRUE(box.meets(box.cylinder()));
}

TEST(CoveringLevel, CantorValues) {
    auto c = fixtures::cantor();
    auto rate = powexp(c, "1");
    EXPECT_EQ(covering_level(rate, 3, Axis::Second), 6);
    EXPECT_EQ(covering_level(rate, 3, Axis::First), 5);
    // 4 psi(n) 2^-n = 2^-(n+... ) exact power of two on the torus
    auto t = fixtures::torus();
    auto tr = powexp(t, "1");  // 4 * 2^-n * 2^-n = 2^(2-2n)
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(covering_level(tr, n, Axis::First), static_cast<long>(2 * n) - 2);
}

TEST(ExactCover, FullCoverWhenPsiIsOne) {
    auto c = fixtures::cantor();
    auto one = powexp(c, "0");
    for (long level = 1; level <= 5; ++level) {
        const auto n2 = approx_square_height(c.bases(), static_cast<std::size_t>(level));
        const double expected = std::pow(2.0, static_cast<double>(level)) * std::pow(3.0, static_cast<double>(n2));
        EXPECT_EQ(static_cast<double>(exact_cover_count(c, one, 2, level)), expected) << level;
    }
}

// Level-n squares contain whole cylinders of A^n, so each w contributes one square.
TEST(ExactCover, CoarseLevelCountsAtMostOnePerCylinder) {
    auto c = fixtures::cantor();
    auto rate = powexp(c, "6");
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_LE(exact_cover_count(c, rate, n, static_cast<long>(n)), static_cast<std::uint64_t>(std::pow(6.0, double(n))));
    }
}

TEST(ExactCover, RecordedCantorCounts) {
    auto c = fixtures::cantor();
    auto rate = powexp(c, "1");
    const std::uint64_t expected[] = {6, 92, 320, 2192};
    for (std::size_t n = 1; n <= 4; ++n) {
        const long level = covering_level(rate, n, Axis::Second);
        EXPECT_EQ(exact_cover_count(c, rate, n, level), expected[n - 1]) << n;
    }
}

TEST(ExactCover, ThreadCountDoesNotMatter) {
    auto c = fixtures::cantor();
    auto rate = powexp(c, "0.5");
    const long level = covering_level(rate, 4, Axis::First);
    EXPECT_EQ(exact_cover_count(c, rate, 4, level, {}, 1), exact_cover_count(c, rate, 4, level, {}, 4));
}

TEST(ExactCover, BudgetExceeded) {
    auto c = fixtures::cantor();
    try {
        (void)exact_cover_count(c, powexp(c, "1"), 4, 9, CoverBudget{10, 100});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
}

TEST(PaperBound, Examples) {
    auto single = fixtures::single_cell();
    for (std::size_t n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(paper_cover_bound(single, powexp(single, "1"), n, Axis::Second), 9.0);
    auto t = fixtures::torus();
    EXPECT_DOUBLE_EQ(paper_cover_bound(t, powexp(t, "1"), 2, Axis::Second), 144.0);
    auto c = fixtures::cantor();
    EXPECT_NEAR(paper_cover_bound(c, powexp(c, "1"), 3, Axis::Second), 3351.0349662584749, 1e-9);
    EXPECT_NEAR(paper_cover_bound(c, powexp(c, "0.3"), 3, Axis::Second), 3351.0349662584749, 1e-9);
    try {
        (void)paper_cover_bound(fixtures::uneven(), powexp(fixtures::uneven(), "1"), 2, Axis::First);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUniformFibre);
    }
}

TEST(VerifyCovering, SingleCell) {
    auto single = fixtures::single_cell();
    for (Axis axis : {Axis::First, Axis::Second}) {
        for (const auto& r : verify_covering(single, powexp(single, "1"), 1, 6, axis)) {
            EXPECT_EQ(r.exact_count, 1u);
            EXPECT_TRUE(r.satisfied);
        }
    }
}

TEST(VerifyCovering, TorusAndCantor) {
    auto t = fixtures::torus();
    for (Axis axis : {Axis::First, Axis::Second}) {
        auto reports = verify_covering(t, powexp(t, "1"), 1, 4, axis);
        ASSERT_EQ(reports.size(), 4u);
        for (const auto& r : reports) EXPECT_TRUE(r.satisfied) << r.n;
    }
    auto c = fixtures::cantor();
    for (Axis axis : {Axis::First, Axis::Second}) {
        for (const auto& r : verify_covering(c, powexp(c, "0.5"), 1, 4, axis)) {
            EXPECT_TRUE(r.satisfied) << r.n;
            EXPECT_NEAR(r.slack, r.bound / static_cast<double>(r.exact_count), 1e-9);
        }
    }
}
