#include "carpet_recur/error.hpp"
#include "carpet_recur/io.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace carpet_recur;
using fixtures::point;

namespace {

PointCloud small_cloud() {
    Bases b{3, 4};
    return PointCloud(b, 3, {point(b, "020", "313"), point(b, "222", "000")}, Provenance{42});
}

std::string written(const PointCloud& cloud, bool coords) {
    std::ostringstream out;
    write_point_cloud(out, cloud, coords);
    return out.str();
}

ErrorCode parse_code(std::string_view text) {
    try {
        (void)parse_point_cloud(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted:\n" << text;
    return ErrorCode::Io;
}

}  // namespace

TEST(Format, Reals) {
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(std::stod(format_real(1.4234110039320355)), 1.4234110039320355);
    EXPECT_EQ(format_extended(INFINITY), "inf");
    EXPECT_EQ(format_extended(-INFINITY), "-inf");
}

TEST(PointCloudCsv, ExactBytes) {
    EXPECT_EQ(written(small_cloud(), false), "depth,m1,m2,seed\n3,3,4,42\ndigits1,digits2\n020,313\n222,000\n");
    EXPECT_EQ(written(small_cloud(), true),
              "depth,m1,m2,seed\n3,3,4,42\ndigits1,digits2,x1,x2\n020,313,2/9,55/64\n222,000,26/27,0\n");
}

TEST(PointCloudCsv, RoundTrip) {
    for (bool coords : {false, true}) {
        auto text = written(small_cloud(), coords);
        auto back = parse_point_cloud(text);
        EXPECT_EQ(back.points(), small_cloud().points());
        EXPECT_EQ(back.provenance().seed, 42u);
        EXPECT_EQ(written(back, coords), text);
    }
}

TEST(PointCloudCsv, LargeBasesUseLetters) {
    Bases b{11, 36};
    std::vector<Digit> x{10, 3}, y{35, 12};
    PointCloud other(b, 2, {SymbolicPoint(b, x, y)});
    auto text = written(other, false);
    EXPECT_NE(text.find("a3,zc\n"), std::string::npos);
    EXPECT_EQ(parse_point_cloud(text).points(), other.points());
}

TEST(PointCloudCsv, AcceptsCrLf) {
    auto cloud = parse_point_cloud("depth,m1,m2,seed\r\n3,3,4,1\r\ndigits1,digits2\r\n020,313\r\n");
    EXPECT_EQ(cloud.size(), 1u);
}

TEST(PointCloudCsv, Rejections) {
    EXPECT_EQ(parse_code(""), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2\n3,3,4\ndigits1,digits2\n020,313\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\ndigits1,digits2\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\ndigits1,digits2\n02,313\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\ndigits1,digits2\n030,313\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,4,3,1\ndigits1,digits2\n020,212\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,-1\ndigits1,digits2\n020,313\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\ndigits1,digits2,x1,x2\n020,313,2/9,1/2\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\ndigits1,digits2\n020,313,0\n"), ErrorCode::Parse);
    EXPECT_EQ(parse_code("depth,m1,m2,seed\n3,3,4,1\nx,y\n020,313\n"), ErrorCode::Parse);
}

TEST(PointCloudCsv, FileRoundTrip) {
    auto path = std::filesystem::temp_directory_path() / "carpet_recur_io_test.csv";
    save_point_cloud(path, small_cloud(), true);
    EXPECT_EQ(load_point_cloud(path).points(), small_cloud().points());
    std::filesystem::remove(path);
    try {
        (void)load_point_cloud(path);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
    }
}

TEST(CoverCsv, Layout) {
    CoverReport r;
    r.n = 3;
    r.axis = Axis::Second;
    r.level = 6;
    r.exact_count = 320;
    r.bound = 3351.0349662584749;
    r.slack = r.bound / 320;
    r.satisfied = true;
    std::ostringstream out;
    write_cover_reports(out, {r});
    EXPECT_EQ(out.str(), "n,i,level,exact_count,bound,slack\n3,2,6,320," + format_real(r.bound) + "," +
                             format_real(r.slack) + "\n");
}

TEST(EstimateCsv, Layout) {
    DimensionEstimate e;
    e.slope = 2;
    e.r_squared = 1;
    e.counts = {{1, 4, 0, 0, 4}, {2, 16, 1, 0, 16}};
    std::ostringstream plain;
    write_estimate(plain, e);
    EXPECT_EQ(plain.str(), "level,count\n1,4\n2,16\nslope,r_squared\n2,1\n");
    e.corrected = true;
    std::ostringstream corrected;
    write_estimate(corrected, e);
    EXPECT_EQ(corrected.str(), "level,count,corrected\n1,4,4\n2,16,16\nslope,r_squared\n2,1\n");
}

TEST(DimCsv, Rows) {
    auto c = fixtures::cantor();
    std::ostringstream out;
    write_dim_header(out);
    auto zero = linked_taus(c, Tau::finite(0));
    write_dim_row(out, zero, theorem_dimension(c, zero));
    auto inf = linked_taus(c, Tau::infinite());
    write_dim_row(out, inf, theorem_dimension(c, inf));
    EXPECT_EQ(out.str(), "tau1,tau2,case,value,active\n0,0,case1," + format_real(theorem_dimension(c, zero).value) +
                             ",both\ninf,inf,infinite-tau,0,edge\n");
}
