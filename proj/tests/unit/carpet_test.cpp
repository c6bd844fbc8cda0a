#include "carpet_recur/carpet.hpp"
#include "carpet_recur/error.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace carpet_recur;

namespace {

ErrorCode code_of(std::string_view spec) {
    try {
        (void)parse_carpet_spec(spec);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "spec accepted:\n" << spec;
    return ErrorCode::Io;
}

}  // namespace

TEST(Carpet, CantorDimensions) {
    auto c = fixtures::cantor();
    EXPECT_EQ(c.column_count(), 2);
    EXPECT_EQ(c.fibre_size(), 3);
    const double expected = 1.4234110039320355;  // log_3 2 + log_4 3
    EXPECT_NEAR(hausdorff_dimension(c), expected, 1e-12);
    EXPECT_NEAR(box_dimension(c), expected, 1e-12);
}

TEST(Carpet, TorusIsTwoDimensional) {
    auto c = fixtures::torus();
    EXPECT_DOUBLE_EQ(hausdorff_dimension(c), 2.0);
    EXPECT_DOUBLE_EQ(box_dimension(c), 2.0);
}

TEST(Carpet, UnevenFibres) {
    auto c = fixtures::uneven();
    EXPECT_FALSE(is_uniform_fibre(c));
    EXPECT_FALSE(c.fibre_size().has_value());
    EXPECT_NEAR(hausdorff_dimension(c), 1.3496838201955776, 1e-12);
    EXPECT_NEAR(box_dimension(c), 1.3690702464285426, 1e-12);
    EXPECT_LT(hausdorff_dimension(c), box_dimension(c));
}

TEST(Carpet, SingleCellHasDimensionZero) {
    auto c = fixtures::single_cell();
    EXPECT_DOUBLE_EQ(hausdorff_dimension(c), 0.0);
    EXPECT_DOUBLE_EQ(box_dimension(c), 0.0);
}

TEST(Carpet, AlphabetSortedAndIndexed) {
    std::vector<DigitPair> pairs{{2, 3}, {0, 1}, {2, 0}, {0, 0}};
    auto c = build_carpet(3, 4, pairs);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c.alphabet()[0], (DigitPair{0, 0}));
    EXPECT_EQ(c.alphabet()[3], (DigitPair{2, 3}));
    EXPECT_EQ(c.index_of({2, 0}), 2u);
    EXPECT_FALSE(c.index_of({1, 0}).has_value());
    EXPECT_EQ(c.column_slot(1), -1);
    EXPECT_EQ(c.column_slot(2), 1);
    EXPECT_EQ(c.slot_members(1).size(), 2u);
}

TEST(Carpet, BuildErrors) {
    std::vector<DigitPair> none;
    EXPECT_THROW((void)build_carpet(2, 3, none), Error);
    std::vector<DigitPair> dup{{0, 0}, {0, 0}};
    try {
        (void)build_carpet(2, 3, dup);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicatePair);
    }
    std::vector<DigitPair> out{{2, 0}};
    try {
        (void)build_carpet(2, 3, out);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DigitOutOfRange);
    }
    std::vector<DigitPair> ok{{0, 0}};
    try {
        (void)build_carpet(3, 2, ok);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadBases);
    }
}

TEST(CarpetSpec, ParsesCommentsAndBlankLines) {
    auto c = parse_carpet_spec("\xEF\xBB\xBF# cantor\n\nbases 3 4   # m1 m2\n0 0\n0 1\r\n0 3\n2 0\n\t2 1\n2 3");
    EXPECT_EQ(c.m1(), 3);
    EXPECT_EQ(c.m2(), 4);
    EXPECT_EQ(c.size(), 6u);
}

TEST(CarpetSpec, RoundTrip) {
    auto c = fixtures::cantor();
    auto again = parse_carpet_spec(format_carpet_spec(c));
    EXPECT_EQ(format_carpet_spec(again), format_carpet_spec(c));
    EXPECT_EQ(format_carpet_spec(c), "bases 3 4\n0 0\n0 1\n0 3\n2 0\n2 1\n2 3\n");
}

TEST(CarpetSpec, Rejections) {
    EXPECT_EQ(code_of(""), ErrorCode::Parse);
    EXPECT_EQ(code_of("0 0\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("bases 2\n0 0\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("bases 2 3\n0 0 1\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("bases 2 3\n-1 0\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("bases 2 3\n0 x\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("bases 2 3\n0 0\n0 0\n"), ErrorCode::DuplicatePair);
    EXPECT_EQ(code_of("bases 2 3\n0 3\n"), ErrorCode::DigitOutOfRange);
    EXPECT_EQ(code_of("bases 4 3\n0 0\n"), ErrorCode::BadBases);
    EXPECT_EQ(code_of("bases 2 3\n"), ErrorCode::EmptyAlphabet);
    EXPECT_EQ(code_of("bases 2 3\n0 0 \xC3\xA9\n"), ErrorCode::Parse);
}
