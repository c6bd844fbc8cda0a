#include "carpet_recur/rate.hpp"

#include "carpet_recur/error.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace carpet_recur {

Tau Tau::from_value(double v) {
    if (std::isnan(v)) fail(ErrorCode::InvalidArgument, "tau must not be NaN");
    if (std::isinf(v)) {
        if (v < 0) return negative(v);
        return infinite();
    }
    if (v < 0) return negative(v);
    return finite(v);
}

RateThreshold::RateThreshold(PowerProduct inverse_psi)
    : inverse_(std::move(inverse_psi)), log_psi_(-inverse_.log()) {}

bool RateThreshold::exceeds(const Rational& q) const {
    if (q <= 0) return true;
    double diff = log_psi_ - log_of(q);
    if (std::isfinite(diff) && std::fabs(diff) > 1e-9 * (1.0 + std::fabs(log_psi_))) return diff > 0;
    PowerProduct ratio = inverse_;
    ratio.multiply(q);
    return ratio.compare_to_one() < 0;
}

bool RateThreshold::exceeds(const Integer& num, const Integer& den) const {
    if (num <= 0) return true;
    double diff = log_psi_ - (log_of(num) - log_of(den));
    if (std::isfinite(diff) && std::fabs(diff) > 1e-9 * (1.0 + std::fabs(log_psi_))) return diff > 0;
    Rational q(num, den);
    q.canonicalize();
    PowerProduct ratio = inverse_;
    ratio.multiply(q);
    return ratio.compare_to_one() < 0;
}

RateFunction RateFunction::power_exp(Bases bases, PowerExpRate params) {
    if (params.t < 0) fail(ErrorCode::InvalidArgument, "powexp rate needs t >= 0");
    if (params.c <= 0) fail(ErrorCode::InvalidArgument, "powexp rate needs c > 0");
    return RateFunction(bases, std::move(params));
}

RateFunction RateFunction::table(Bases bases, TableRate table) {
    if (table.values.empty()) fail(ErrorCode::InvalidArgument, "rate table is empty");
    for (const auto& [n, psi] : table.values) {
        if (n < 1) fail(ErrorCode::InvalidArgument, "rate table indices start at 1");
        if (psi <= 0) fail(ErrorCode::InvalidArgument, "rate table values must be positive");
    }
    return RateFunction(bases, std::move(table));
}

long RateFunction::horizon() const noexcept {
    if (const auto* t = table_values()) return t->values.rbegin()->first;
    return std::numeric_limits<long>::max();
}

void RateFunction::check_n(long n) const {
    if (n < 1) fail(ErrorCode::InvalidArgument, "rate functions are defined for n >= 1");
    if (const auto* t = table_values()) {
        if (n > horizon()) {
            fail(ErrorCode::HorizonExceeded, "n = " + std::to_string(n) + " beyond table horizon " +
                                                 std::to_string(horizon()));
        }
        if (!t->values.contains(n)) {
            fail(ErrorCode::HorizonExceeded, "rate table has no entry for n = " + std::to_string(n));
        }
    }
}

PowerProduct RateFunction::inverse_psi(long n) const {
    check_n(n);
    PowerProduct inv;
    if (const auto* p = power_exp_params()) {
        inv.multiply(p->c, Rational(-1));
        inv.multiply(Rational(n), p->gamma);
        inv.multiply(Rational(bases_.m1), p->t * n);
    } else {
        const Rational& psi = table_values()->values.at(n);
        inv.multiply(psi, Rational(-1));
    }
    return inv;
}

double RateFunction::log_psi(long n) const { return -inverse_psi(n).log(); }

RateThreshold RateFunction::threshold(long n) const { return RateThreshold(inverse_psi(n)); }

double RateFunction::ell(Axis axis, long n) const {
    return inverse_psi(n).log() / std::log(static_cast<double>(base_of(bases_, axis)));
}

long RateFunction::hat_ell(Axis axis, long n) const { return ceil_log(inverse_psi(n), base_of(bases_, axis)); }

Tau RateFunction::tau(Axis axis) const {
    if (const auto* p = power_exp_params()) {
        double t = p->t.get_d();
        return Tau::finite(axis == Axis::First ? t : t * bases_.log_ratio());
    }
    const auto& values = table_values()->values;
    long h = horizon();
    double best = std::numeric_limits<double>::infinity();
    double log_m = std::log(static_cast<double>(base_of(bases_, axis)));
    for (auto it = values.lower_bound(std::max(1L, h / 2)); it != values.end(); ++it) {
        double ratio = -log_of(it->second) / log_m / static_cast<double>(it->first);
        best = std::min(best, ratio);
    }
    Tau out = best < 0 ? Tau::negative(best) : Tau::finite(best);
    out.estimated = true;
    return out;
}

std::string RateFunction::describe() const {
    if (const auto* p = power_exp_params()) {
        return "powexp t=" + to_string(p->t) + " gamma=" + to_string(p->gamma) + " c=" + to_string(p->c);
    }
    return "table horizon=" + std::to_string(horizon());
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

}  // namespace

TableRate parse_rate_table(std::string_view text) {
    TableRate table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    long last_n = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line == "n,psi") continue;
        auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            fail(ErrorCode::Parse, "rate table line " + std::to_string(line_no) + ": expected 'n,psi'");
        }
        long n = 0;
        Rational psi;
        try {
            n = static_cast<long>(parse_count(trim(line.substr(0, comma))));
            psi = parse_rational(trim(line.substr(comma + 1)));
        } catch (const Error& e) {
            fail(ErrorCode::Parse, "rate table line " + std::to_string(line_no) + ": " + e.what());
        }
        if (n <= last_n) {
            fail(ErrorCode::Parse, "rate table line " + std::to_string(line_no) + ": n must be strictly increasing");
        }
        if (psi <= 0) fail(ErrorCode::Parse, "rate table line " + std::to_string(line_no) + ": psi must be > 0");
        last_n = n;
        table.values.emplace(n, psi);
    }
    if (table.values.empty()) fail(ErrorCode::Parse, "rate table has no rows");
    return table;
}

RateFunction parse_rate_spec(std::string_view spec, Bases bases) {
    auto tokens = split_ws(trim(spec));
    if (tokens.empty()) fail(ErrorCode::Parse, "empty rate spec");
    if (tokens[0] == "table") {
        if (tokens.size() != 2) fail(ErrorCode::Parse, "expected 'table <path>'");
        std::filesystem::path path{std::string(tokens[1])};
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorCode::Io, "cannot open rate table '" + path.string() + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return RateFunction::table(bases, parse_rate_table(buffer.str()));
    }
    if (tokens[0] != "powexp") fail(ErrorCode::Parse, "rate spec must start with 'powexp' or 'table'");
    PowerExpRate params;
    bool have_t = false, have_gamma = false, have_c = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string_view::npos) fail(ErrorCode::Parse, "expected key=value in rate spec");
        auto key = tokens[i].substr(0, eq);
        auto value = parse_rational(tokens[i].substr(eq + 1));
        bool* seen = nullptr;
        if (key == "t") {
            params.t = value;
            seen = &have_t;
        } else if (key == "gamma") {
            params.gamma = value;
            seen = &have_gamma;
        } else if (key == "c") {
            params.c = value;
            seen = &have_c;
        } else {
            fail(ErrorCode::Parse, "unknown rate parameter '" + std::string(key) + "'");
        }
        if (*seen) fail(ErrorCode::Parse, "rate parameter '" + std::string(key) + "' given twice");
        *seen = true;
    }
    if (!have_t) fail(ErrorCode::Parse, "powexp rate needs t=<real>");
    try {
        return RateFunction::power_exp(bases, params);
    } catch (const Error& e) {
        fail(ErrorCode::Parse, e.what());
    }
}

}  // namespace carpet_recur
