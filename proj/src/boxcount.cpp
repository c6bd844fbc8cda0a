#include "carpet_recur/boxcount.hpp"

#include "carpet_recur/error.hpp"
#include "parallel.hpp"

#include <cmath>
#include <unordered_map>

namespace carpet_recur {

PointCloud::PointCloud(Bases bases, std::size_t depth, std::vector<SymbolicPoint> points, Provenance provenance)
    : bases_(bases), depth_(depth), points_(std::move(points)), provenance_(provenance) {
    if (points_.empty()) fail(ErrorCode::InvalidArgument, "point cloud is empty");
    for (const auto& p : points_) {
        if (p.bases() != bases_) fail(ErrorCode::InvalidArgument, "point cloud mixes bases");
        if (p.depth() != depth_) fail(ErrorCode::DepthMismatch, "point cloud mixes depths");
    }
}

namespace {

using Occupancy = std::unordered_map<std::string, std::uint32_t>;

template <class KeyOf>
Occupancy tally(const PointCloud& cloud, unsigned threads, KeyOf key_of) {
    threads = std::max(1u, threads);
    std::vector<Occupancy> partial(threads);
    detail::parallel_chunks(cloud.size(), threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        for (std::uint64_t i = begin; i < end; ++i) ++partial[worker][key_of(cloud.points()[i])];
    });
    for (unsigned w = 1; w < threads; ++w) {
        for (const auto& [key, n] : partial[w]) partial[0][key] += n;
    }
    return std::move(partial[0]);
}

Occupancy square_tally(const PointCloud& cloud, std::size_t level, unsigned threads) {
    const std::size_t height = approx_square_height(cloud.bases(), level);
    if (level > cloud.depth() || height > cloud.depth()) {
        fail(ErrorCode::DepthExceeded, "level " + std::to_string(level) + " needs depth " +
                                           std::to_string(std::max(level, height)) + ", cloud has " +
                                           std::to_string(cloud.depth()));
    }
    return tally(cloud, threads, [&](const SymbolicPoint& p) {
        auto d1 = p.digits(Axis::First);
        auto d2 = p.digits(Axis::Second);
        std::string key(d1.begin(), d1.begin() + static_cast<long>(level));
        key.append(d2.begin(), d2.begin() + static_cast<long>(height));
        return key;
    });
}

Occupancy grid_tally(const PointCloud& cloud, std::size_t level, unsigned threads) {
    if (level > cloud.depth()) {
        fail(ErrorCode::DepthExceeded, "grid level " + std::to_string(level) + " exceeds cloud depth " +
                                           std::to_string(cloud.depth()));
    }
    const Bases b = cloud.bases();
    const Integer side = ipow(b.m1, level);
    const Integer y_scale = ipow(b.m2, cloud.depth());
    return tally(cloud, threads, [&](const SymbolicPoint& p) {
        auto d1 = p.digits(Axis::First);
        std::string key(d1.begin(), d1.begin() + static_cast<long>(level));
        Integer y = 0;
        for (Digit d : p.digits(Axis::Second)) {
            y *= b.m2;
            y += d;
        }
        Integer row = y * side / y_scale;
        key.push_back('|');
        key += row.get_str(16);
        return key;
    });
}

}  // namespace

std::uint64_t count_squares(const PointCloud& cloud, std::size_t level, unsigned threads) {
    return square_tally(cloud, level, threads).size();
}

std::uint64_t count_grid_boxes(const PointCloud& cloud, std::size_t level, unsigned threads) {
    return grid_tally(cloud, level, threads).size();
}

LevelCount occupancy(const PointCloud& cloud, std::size_t level, bool grid, unsigned threads) {
    auto boxes = grid ? grid_tally(cloud, level, threads) : square_tally(cloud, level, threads);
    LevelCount c;
    c.level = level;
    c.count = boxes.size();
    for (const auto& entry : boxes) {
        if (entry.second == 1) ++c.singletons;
        else if (entry.second == 2) ++c.doubletons;
    }
    const double f1 = static_cast<double>(c.singletons);
    const double f2 = static_cast<double>(c.doubletons);
    c.corrected = static_cast<double>(c.count) + f1 * (f1 - 1.0) / (2.0 * (f2 + 1.0));
    return c;
}

namespace {

struct Fit {
    double a = 0.0, b = 0.0, c = 0.0, r_squared = 0.0;
    bool ok = false;
};

// Least squares y = a x1 + b x2 + c via centred normal equations.
Fit fit_two(const std::vector<double>& x1, const std::vector<double>& x2, const std::vector<double>& y) {
    const double k = static_cast<double>(y.size());
    double m1 = 0, m2 = 0, my = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        m1 += x1[i];
        m2 += x2[i];
        my += y[i];
    }
    m1 /= k;
    m2 /= k;
    my /= k;
    double s11 = 0, s22 = 0, s12 = 0, s1y = 0, s2y = 0, syy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double u = x1[i] - m1, v = x2[i] - m2, w = y[i] - my;
        s11 += u * u;
        s22 += v * v;
        s12 += u * v;
        s1y += u * w;
        s2y += v * w;
        syy += w * w;
    }
    Fit f;
    double det = s11 * s22 - s12 * s12;
    if (!(det > 1e-9 * s11 * s22)) return f;
    f.a = (s22 * s1y - s12 * s2y) / det;
    f.b = (s11 * s2y - s12 * s1y) / det;
    f.c = my - f.a * m1 - f.b * m2;
    double explained = f.a * s1y + f.b * s2y;
    f.r_squared = syy > 0.0 ? explained / syy : 1.0;
    f.ok = true;
    return f;
}

}  // namespace

DimensionEstimate estimate_dimension(const PointCloud& cloud, std::size_t first, std::size_t last,
                                     const EstimateOptions& opts) {
    if (last < first || last - first + 1 < 3) {
        fail(ErrorCode::InsufficientLevels, "dimension estimates need at least three levels");
    }
    const bool grid = opts.counter == Counter::EuclideanGrid;
    DimensionEstimate est;
    est.corrected = opts.coverage_correction;
    const double log_m1 = std::log(static_cast<double>(cloud.bases().m1));
    const double log_m2 = std::log(static_cast<double>(cloud.bases().m2));
    std::vector<double> xs, hs, ys;
    for (std::size_t level = first; level <= last; ++level) {
        auto c = occupancy(cloud, level, grid, opts.threads);
        xs.push_back(static_cast<double>(level) * log_m1);
        hs.push_back(static_cast<double>(approx_square_height(cloud.bases(), level)) * log_m2);
        ys.push_back(std::log(opts.coverage_correction ? c.corrected : static_cast<double>(c.count)));
        est.counts.push_back(c);
    }
    est.saturated = static_cast<double>(est.counts.back().count) >= static_cast<double>(cloud.size()) / 10.0;

    if (opts.model == Model::TwoScale && !grid) {
        Fit f = fit_two(xs, hs, ys);
        if (f.ok) {
            est.model = Model::TwoScale;
            est.first_exponent = f.a;
            est.second_exponent = f.b;
            est.slope = f.a + f.b;
            est.intercept = f.c;
            est.r_squared = f.r_squared;
            return est;
        }
    }
    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    est.model = Model::SingleScale;
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    est.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return est;
}

}  // namespace carpet_recur
