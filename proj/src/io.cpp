#include "carpet_recur/io.hpp"

#include "carpet_recur/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace carpet_recur {

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_extended(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return format_real(value);
}

namespace {

std::string digit_string(std::span<const Digit> digits) {
    std::string s;
    s.reserve(digits.size());
    for (Digit d : digits) s.push_back(digit_char(d));
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_u64(std::string_view text, std::size_t line_no, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) + ": invalid " + what + " '" +
                                   std::string(text) + "'");
    }
    return v;
}

}  // namespace

void write_point_cloud(std::ostream& out, const PointCloud& cloud, bool with_coordinates) {
    out << "depth,m1,m2,seed\n";
    out << cloud.depth() << ',' << cloud.bases().m1 << ',' << cloud.bases().m2 << ',' << cloud.provenance().seed << '\n';
    out << (with_coordinates ? "digits1,digits2,x1,x2\n" : "digits1,digits2\n");
    for (const auto& p : cloud.points()) {
        out << digit_string(p.digits(Axis::First)) << ',' << digit_string(p.digits(Axis::Second));
        if (with_coordinates) {
            auto xy = coding_point(p);
            out << ',' << to_string(xy.x) << ',' << to_string(xy.y);
        }
        out << '\n';
    }
}

void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud, bool with_coordinates) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    write_point_cloud(out, cloud, with_coordinates);
    if (!out) fail(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

PointCloud parse_point_cloud(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 3) fail(ErrorCode::Parse, "point cloud needs a header, a parameter line and a column line");
    if (lines[0] != "depth,m1,m2,seed") fail(ErrorCode::Parse, "point cloud line 1: expected 'depth,m1,m2,seed'");
    auto params = split(lines[1], ',');
    if (params.size() != 4) fail(ErrorCode::Parse, "point cloud line 2: expected four fields");
    std::uint64_t depth = parse_u64(params[0], 2, "depth");
    std::uint64_t m1 = parse_u64(params[1], 2, "m1");
    std::uint64_t m2 = parse_u64(params[2], 2, "m2");
    std::uint64_t seed = parse_u64(params[3], 2, "seed");
    if (depth == 0 || depth > 1'000'000) fail(ErrorCode::Parse, "point cloud line 2: depth out of range");
    if (m1 > kMaxBase || m2 > kMaxBase) fail(ErrorCode::Parse, "point cloud line 2: bases out of range");
    Bases bases;
    try {
        bases = Bases::checked(static_cast<int>(m1), static_cast<int>(m2));
    } catch (const Error& e) {
        fail(ErrorCode::Parse, std::string("point cloud line 2: ") + e.what());
    }
    bool coords = false;
    if (lines[2] == "digits1,digits2,x1,x2") coords = true;
    else if (lines[2] != "digits1,digits2") fail(ErrorCode::Parse, "point cloud line 3: unknown column layout");

    std::vector<SymbolicPoint> points;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto fields = split(lines[i], ',');
        if (fields.size() != (coords ? 4u : 2u)) {
            fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) + ": wrong number of fields");
        }
        if (fields[0].size() != depth || fields[1].size() != depth) {
            fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) + ": digit strings must have length " +
                                       std::to_string(depth));
        }
        std::vector<Digit> first, second;
        try {
            for (char c : fields[0]) first.push_back(digit_value(c, bases.m1));
            for (char c : fields[1]) second.push_back(digit_value(c, bases.m2));
        } catch (const Error& e) {
            fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) + ": " + e.what());
        }
        SymbolicPoint p(bases, std::move(first), std::move(second));
        if (coords) {
            auto xy = coding_point(p);
            Rational x, y;
            try {
                x = parse_rational(fields[2]);
                y = parse_rational(fields[3]);
            } catch (const Error& e) {
                fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) + ": " + e.what());
            }
            if (x != xy.x || y != xy.y) {
                fail(ErrorCode::Parse, "point cloud line " + std::to_string(line_no) +
                                           ": coordinates disagree with the digit strings");
            }
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) fail(ErrorCode::Parse, "point cloud has no points");
    return PointCloud(bases, depth, std::move(points), Provenance{seed});
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open point cloud '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_point_cloud(buffer.str());
}

void write_cover_reports(std::ostream& out, const std::vector<CoverReport>& reports) {
    out << "n,i,level,exact_count,bound,slack\n";
    for (const auto& r : reports) {
        out << r.n << ',' << static_cast<int>(r.axis) << ',' << r.level << ',' << r.exact_count << ','
            << format_real(r.bound) << ',' << format_extended(r.slack) << '\n';
    }
}

void write_estimate(std::ostream& out, const DimensionEstimate& estimate) {
    out << (estimate.corrected ? "level,count,corrected\n" : "level,count\n");
    for (const auto& c : estimate.counts) {
        out << c.level << ',' << c.count;
        if (estimate.corrected) out << ',' << format_real(c.corrected);
        out << '\n';
    }
    out << "slope,r_squared\n";
    out << format_real(estimate.slope) << ',' << format_real(estimate.r_squared) << '\n';
}

void write_dim_header(std::ostream& out) { out << "tau1,tau2,case,value,active\n"; }

void write_dim_row(std::ostream& out, const TauPair& taus, const DimReport& report) {
    std::string tau1 = taus.tau1.kind == Tau::Kind::Infinite ? "inf" : format_real(taus.tau1.value);
    out << tau1 << ',' << format_extended(taus.tau2) << ',' << dim_case_name(report.case_tag) << ','
        << format_real(report.value) << ',' << report.active << '\n';
}

}  // namespace carpet_recur
