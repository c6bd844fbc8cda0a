#pragma once

#include "carpet_recur/boxcount.hpp"
#include "carpet_recur/dimtheory.hpp"
#include "carpet_recur/recur.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace carpet_recur {

/// Shortest round-tripping decimal form ("%.17g").
std::string format_real(double value);

/// Point-cloud CSV:
///
///     depth,m1,m2,seed
///     <depth>,<m1>,<m2>,<seed>
///     digits1,digits2[,x1,x2]
///     <digits>,<digits>[,<p/q>,<p/q>]
///
/// Digits are one character each (0-9a-z). Coordinate columns are optional
/// and, when present, must equal the value coded by the digit strings.
void write_point_cloud(std::ostream& out, const PointCloud& cloud, bool with_coordinates = false);
void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud, bool with_coordinates = false);
PointCloud parse_point_cloud(std::string_view text);
PointCloud load_point_cloud(const std::filesystem::path& path);

/// "n,i,level,exact_count,bound,slack" then one row per report.
void write_cover_reports(std::ostream& out, const std::vector<CoverReport>& reports);

/// "level,count" rows (plus a "corrected" column when the coverage correction
/// is on) followed by a "slope,r_squared" summary block.
void write_estimate(std::ostream& out, const DimensionEstimate& estimate);

/// "tau1,tau2,case,value,active" rows.
void write_dim_header(std::ostream& out);
void write_dim_row(std::ostream& out, const TauPair& taus, const DimReport& report);

/// Extended real for CSV output: "inf", "-inf" or format_real.
std::string format_extended(double value);

}  // namespace carpet_recur
