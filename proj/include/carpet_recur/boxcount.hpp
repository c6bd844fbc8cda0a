#pragma once

#include "carpet_recur/symbolic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace carpet_recur {

/// Where a cloud came from; carried through the CSV header.
struct Provenance {
    std::uint64_t seed = 0;
};

/// Nonempty set of points sharing bases and depth.
class PointCloud {
public:
    PointCloud(Bases bases, std::size_t depth, std::vector<SymbolicPoint> points, Provenance provenance = {});

    [[nodiscard]] const Bases& bases() const noexcept { return bases_; }
    [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
    [[nodiscard]] const std::vector<SymbolicPoint>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const Provenance& provenance() const noexcept { return provenance_; }

private:
    Bases bases_;
    std::size_t depth_;
    std::vector<SymbolicPoint> points_;
    Provenance provenance_;
};

/// Distinct level-`level` approximate squares holding a cloud point. Throws
/// DepthExceeded when the squares need more digits than the cloud has.
std::uint64_t count_squares(const PointCloud& cloud, std::size_t level, unsigned threads = 1);

/// Distinct cells of the Euclidean grid of side m1^-level.
std::uint64_t count_grid_boxes(const PointCloud& cloud, std::size_t level, unsigned threads = 1);

struct LevelCount {
    std::size_t level = 0;
    std::uint64_t count = 0;
    std::uint64_t singletons = 0;  // boxes holding exactly one point
    std::uint64_t doubletons = 0;  // boxes holding exactly two points
    double corrected = 0.0;        // count plus the unseen-box estimate
};

/// Distinct boxes with occupancy statistics.
LevelCount occupancy(const PointCloud& cloud, std::size_t level, bool grid = false, unsigned threads = 1);

enum class Counter { ApproximateSquares, EuclideanGrid };

enum class Model {
    SingleScale,  // ln count = d * level ln m1 + c
    TwoScale,     // ln count = a * level ln m1 + b * height ln m2 + c, d = a + b
};

struct EstimateOptions {
    Counter counter = Counter::ApproximateSquares;
    Model model = Model::SingleScale;
    /// Replace each count by the bias-corrected Chao1 estimate
    /// count + f1 (f1 - 1) / (2 (f2 + 1)) of occupied boxes.
    bool coverage_correction = false;
    unsigned threads = 1;
};

struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    /// TwoScale only: the horizontal and vertical exponents a and b.
    double first_exponent = 0.0;
    double second_exponent = 0.0;
    Model model = Model::SingleScale;
    bool corrected = false;
    std::vector<LevelCount> counts;
    bool saturated = false;  // top-level count >= |cloud| / 10
};

/// Least-squares fit of ln count over levels [first, last]. TwoScale falls
/// back to SingleScale when the heights are proportional to the levels
/// (m1 = m2). Throws InsufficientLevels for fewer than three levels.
DimensionEstimate estimate_dimension(const PointCloud& cloud, std::size_t first, std::size_t last,
                                     const EstimateOptions& opts = {});

}  // namespace carpet_recur
