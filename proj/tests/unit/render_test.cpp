#include "carpet_recur/error.hpp"
#include "carpet_recur/render.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

using namespace carpet_recur;
using fixtures::point;

TEST(Render, Depth) {
    EXPECT_EQ(render_depth(Bases{3, 4}, 81), 4u);
    EXPECT_EQ(render_depth(Bases{3, 4}, 82), 5u);
    EXPECT_EQ(render_depth(Bases{2, 2}, 1), 0u);
}

// Counts frozen from an independent rasteriser.
TEST(Render, CantorPixelCounts) {
    auto c = fixtures::cantor();
    EXPECT_EQ(render_carpet(c, 81).marked(), 752u);
    EXPECT_EQ(render_carpet(c, 100).marked(), 1938u);
    EXPECT_EQ(render_carpet(c, 729).marked(), 17536u);
}

TEST(Render, FullAlphabetIsBlack) {
    for (int res : {1, 7, 64, 100}) EXPECT_EQ(render_carpet(fixtures::torus(), res).marked(), static_cast<std::uint64_t>(res) * res);
    std::vector<DigitPair> all;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 5; ++b) all.push_back({a, b});
    EXPECT_EQ(render_carpet(build_carpet(3, 5, all), 50).marked(), 2500u);
}

TEST(Render, TopRowIsUpperEdge) {
    // Single cell (0, 0): only the bottom-left pixel at resolution 2 on base 2.
    auto img = render_carpet(fixtures::single_cell(2, 2), 2);
    EXPECT_EQ(img.marked(), 1u);
    EXPECT_EQ(img.at(0, 1), 0);
    EXPECT_EQ(img.at(0, 0), 255);
}

TEST(Render, CloudMarksCorners) {
    Bases b{3, 4};
    PointCloud cloud(b, 2, {point(b, "00", "00"), point(b, "22", "33")});
    auto img = render_cloud(cloud, 10);
    EXPECT_EQ(img.marked(), 2u);
    EXPECT_EQ(img.at(0, 9), 0);
    // (8/9, 15/16) lands in column 8, row 0.
    EXPECT_EQ(img.at(8, 0), 0);
}

TEST(Render, ResolutionLimits) {
    EXPECT_THROW((void)render_carpet(fixtures::cantor(), 0), Error);
    EXPECT_THROW((void)render_carpet(fixtures::cantor(), kMaxResolution + 1), Error);
}

TEST(Render, PgmBytes) {
    auto img = render_carpet(fixtures::single_cell(2, 2), 2);
    auto path = std::filesystem::temp_directory_path() / "carpet_recur_render_test.pgm";
    write_pgm(img, path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(bytes, std::string("P5\n2 2\n255\n\xff\xff\x00\xff", 15));
    std::filesystem::remove(path);
}
