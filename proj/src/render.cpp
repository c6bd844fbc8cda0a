#include "carpet_recur/render.hpp"

#include "carpet_recur/error.hpp"

#include <algorithm>
#include <fstream>

namespace carpet_recur {

std::uint64_t Image::marked() const {
    return static_cast<std::uint64_t>(std::count(pixels.begin(), pixels.end(), std::uint8_t{0}));
}

namespace {

void check_resolution(int resolution) {
    if (resolution < 1 || resolution > kMaxResolution) {
        fail(ErrorCode::InvalidArgument, "resolution must be between 1 and " + std::to_string(kMaxResolution));
    }
}

Image blank(int resolution) {
    Image img;
    img.resolution = resolution;
    img.pixels.assign(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution), 255);
    return img;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

class CarpetPainter {
public:
    CarpetPainter(const Carpet& carpet, int resolution)
        : carpet_(carpet),
          res_(static_cast<std::uint64_t>(resolution)),
          depth_(render_depth(carpet.bases(), resolution)),
          height_(approx_square_height(carpet.bases(), depth_)),
          image_(blank(resolution)) {
        for (const auto& col : carpet.column_profile()) columns_.push_back(col.column);
    }

    Image paint() {
        visit(0, 0, 1, 0, 1);
        return std::move(image_);
    }

private:
    // Cell [x/sx, (x+1)/sx) x [y/sy, (y+1)/sy) after `j` positions.
    void visit(std::size_t j, std::uint64_t x, std::uint64_t sx, std::uint64_t y, std::uint64_t sy) {
        std::uint64_t c0 = x * res_ / sx, c1 = ceil_div((x + 1) * res_, sx);
        std::uint64_t r0 = y * res_ / sy, r1 = ceil_div((y + 1) * res_, sy);
        if (j == depth_) {
            for (std::uint64_t r = r0; r < r1; ++r) {
                for (std::uint64_t c = c0; c < c1; ++c) pixel(c, r) = 0;
            }
            return;
        }
        if (c1 - c0 == 1 && r1 - r0 == 1 && pixel(c0, r0) == 0) return;
        if (j < height_) {
            for (const auto& pair : carpet_.alphabet()) {
                visit(j + 1, x * static_cast<std::uint64_t>(carpet_.m1()) + static_cast<std::uint64_t>(pair.column),
                      sx * static_cast<std::uint64_t>(carpet_.m1()),
                      y * static_cast<std::uint64_t>(carpet_.m2()) + static_cast<std::uint64_t>(pair.row),
                      sy * static_cast<std::uint64_t>(carpet_.m2()));
            }
        } else {
            for (int column : columns_) {
                visit(j + 1, x * static_cast<std::uint64_t>(carpet_.m1()) + static_cast<std::uint64_t>(column),
                      sx * static_cast<std::uint64_t>(carpet_.m1()), y, sy);
            }
        }
    }

    // `r` counts pixel rows from the bottom.
    std::uint8_t& pixel(std::uint64_t c, std::uint64_t r) { return image_.pixels[(res_ - 1 - r) * res_ + c]; }

    const Carpet& carpet_;
    std::uint64_t res_;
    std::size_t depth_;
    std::size_t height_;
    Image image_;
    std::vector<int> columns_;
};

}  // namespace

std::size_t render_depth(const Bases& bases, int resolution) {
    check_resolution(resolution);
    std::size_t d = 0;
    for (long long p = 1; p < resolution; p *= bases.m1) ++d;
    return d;
}

Image render_carpet(const Carpet& carpet, int resolution) {
    check_resolution(resolution);
    return CarpetPainter(carpet, resolution).paint();
}

Image render_cloud(const PointCloud& cloud, int resolution) {
    check_resolution(resolution);
    Image img = blank(resolution);
    const Integer sx = ipow(cloud.bases().m1, cloud.depth());
    const Integer sy = ipow(cloud.bases().m2, cloud.depth());
    for (const auto& p : cloud.points()) {
        Integer x = 0, y = 0;
        for (Digit d : p.digits(Axis::First)) x = x * cloud.bases().m1 + d;
        for (Digit d : p.digits(Axis::Second)) y = y * cloud.bases().m2 + d;
        Integer col = x * resolution / sx;
        Integer row_up = y * resolution / sy;
        auto c = static_cast<std::size_t>(col.get_ui());
        auto r = static_cast<std::size_t>(resolution - 1) - static_cast<std::size_t>(row_up.get_ui());
        img.pixels[r * static_cast<std::size_t>(resolution) + c] = 0;
    }
    return img;
}

void write_pgm(const Image& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << "P5\n" << image.resolution << ' ' << image.resolution << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!out) fail(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

}  // namespace carpet_recur
