#pragma once

#include "carpet_recur/boxcount.hpp"
#include "carpet_recur/carpet.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace carpet_recur {

/// Square greyscale raster, row 0 at the top (the y = 1 side). Pixel (col,
/// row) covers [col/res, (col+1)/res) x [1 - (row+1)/res, 1 - row/res).
struct Image {
    int resolution = 0;
    std::vector<std::uint8_t> pixels;  // row-major, 0 = marked, 255 = blank

    [[nodiscard]] std::uint8_t at(int col, int row) const {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(col)];
    }
    [[nodiscard]] std::uint64_t marked() const;
};

inline constexpr int kMaxResolution = 16384;

/// Depth used for carpet rendering: smallest d with m1^d >= resolution.
std::size_t render_depth(const Bases& bases, int resolution);

/// Marks every pixel meeting an admissible approximate square of level
/// render_depth().
Image render_carpet(const Carpet& carpet, int resolution);

/// Marks the pixel holding the left-bottom corner of each point's cylinder.
Image render_cloud(const PointCloud& cloud, int resolution);

/// Binary PGM (P5, maxval 255).
void write_pgm(const Image& image, const std::filesystem::path& path);

}  // namespace carpet_recur
