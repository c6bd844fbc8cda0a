#include "carpet_recur/carpet.hpp"

#include "carpet_recur/error.hpp"
#include "carpet_recur/exact.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace carpet_recur {

Bases Bases::checked(int m1, int m2) {
    if (m1 < 2 || m2 < m1 || m2 > kMaxBase) {
        fail(ErrorCode::BadBases, "bases must satisfy 2 <= m1 <= m2 <= " + std::to_string(kMaxBase) +
                                      ", got (" + std::to_string(m1) + ", " + std::to_string(m2) + ")");
    }
    return Bases{m1, m2};
}

double Bases::log_ratio() const noexcept {
    return m1 == m2 ? 1.0 : std::log(static_cast<double>(m1)) / std::log(static_cast<double>(m2));
}

namespace {

std::string pair_text(DigitPair p) {
    return "(" + std::to_string(p.column) + ", " + std::to_string(p.row) + ")";
}

}  // namespace

Carpet build_carpet(int m1, int m2, std::span<const DigitPair> pairs) {
    Carpet c;
    c.bases_ = Bases::checked(m1, m2);
    if (pairs.empty()) fail(ErrorCode::EmptyAlphabet, "carpet alphabet is empty");
    for (auto p : pairs) {
        if (p.column < 0 || p.column >= m1 || p.row < 0 || p.row >= m2) {
            fail(ErrorCode::DigitOutOfRange, "digit pair " + pair_text(p) + " out of range for bases (" +
                                                 std::to_string(m1) + ", " + std::to_string(m2) + ")");
        }
    }
    c.alphabet_.assign(pairs.begin(), pairs.end());
    std::sort(c.alphabet_.begin(), c.alphabet_.end());
    if (auto dup = std::adjacent_find(c.alphabet_.begin(), c.alphabet_.end()); dup != c.alphabet_.end()) {
        fail(ErrorCode::DuplicatePair, "duplicate digit pair " + pair_text(*dup));
    }

    c.column_to_slot_.assign(static_cast<std::size_t>(m1), -1);
    c.slot_of_.resize(c.alphabet_.size());
    for (std::size_t i = 0; i < c.alphabet_.size(); ++i) {
        int col = c.alphabet_[i].column;
        if (c.column_to_slot_[col] < 0) {
            c.column_to_slot_[col] = static_cast<int>(c.profile_.size());
            c.profile_.push_back({col, 0});
            c.members_.emplace_back();
        }
        int slot = c.column_to_slot_[col];
        c.profile_[slot].count += 1;
        c.members_[slot].push_back(i);
        c.slot_of_[i] = slot;
    }
    return c;
}

std::optional<int> Carpet::fibre_size() const noexcept {
    int n = profile_.front().count;
    for (const auto& col : profile_) {
        if (col.count != n) return std::nullopt;
    }
    return n;
}

bool Carpet::contains(DigitPair pair) const noexcept { return index_of(pair).has_value(); }

std::optional<std::size_t> Carpet::index_of(DigitPair pair) const noexcept {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), pair);
    if (it == alphabet_.end() || *it != pair) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet_.begin());
}

int Carpet::column_slot(int column) const noexcept {
    if (column < 0 || column >= bases_.m1) return -1;
    return column_to_slot_[column];
}

std::span<const std::size_t> Carpet::slot_members(int slot) const noexcept {
    return members_[static_cast<std::size_t>(slot)];
}

double box_dimension(const Carpet& carpet) {
    double big_m = carpet.column_count();
    double cells = static_cast<double>(carpet.size());
    return std::log(big_m) / std::log(static_cast<double>(carpet.m1())) +
           std::log(cells / big_m) / std::log(static_cast<double>(carpet.m2()));
}

double hausdorff_dimension(const Carpet& carpet) {
    double ratio = carpet.bases().log_ratio();
    double sum = 0.0;
    for (const auto& col : carpet.column_profile()) sum += std::pow(static_cast<double>(col.count), ratio);
    return std::log(sum) / std::log(static_cast<double>(carpet.m1()));
}

bool is_uniform_fibre(const Carpet& carpet) { return carpet.fibre_size().has_value(); }

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
    fail(ErrorCode::Parse, "carpet spec line " + std::to_string(line_no) + ": " + what);
}

int parse_small(std::string_view token, std::size_t line_no) {
    if (token.empty() || token.size() > 6) parse_error(line_no, "bad integer '" + std::string(token) + "'");
    for (char c : token) {
        if (c < '0' || c > '9') parse_error(line_no, "bad integer '" + std::string(token) + "'");
    }
    return static_cast<int>(parse_count(token));
}

}  // namespace

Carpet parse_carpet_spec(std::string_view text) {
    std::optional<Bases> bases;
    std::vector<DigitPair> pairs;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        for (char c : line) {
            if (static_cast<unsigned char>(c) >= 0x80 || (c < 0x20 && c != '\t')) {
                parse_error(line_no, "unexpected character outside a comment");
            }
        }
        auto tokens = split_tokens(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (!bases) {
            if (tokens.size() != 3 || tokens[0] != "bases") parse_error(line_no, "expected 'bases <m1> <m2>'");
            int m1 = parse_small(tokens[1], line_no);
            int m2 = parse_small(tokens[2], line_no);
            try {
                bases = Bases::checked(m1, m2);
            } catch (const Error& e) {
                throw Error(e.code(), "carpet spec line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            if (tokens.size() != 2) parse_error(line_no, "expected '<column> <row>'");
            pairs.push_back({parse_small(tokens[0], line_no), parse_small(tokens[1], line_no)});
        }
        if (end == text.size()) break;
    }
    if (!bases) fail(ErrorCode::Parse, "carpet spec: missing 'bases' line");
    return build_carpet(bases->m1, bases->m2, pairs);
}

Carpet load_carpet_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open carpet spec '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_carpet_spec(buffer.str());
}

std::string format_carpet_spec(const Carpet& carpet) {
    std::string out = "bases " + std::to_string(carpet.m1()) + " " + std::to_string(carpet.m2()) + "\n";
    for (auto p : carpet.alphabet()) out += std::to_string(p.column) + " " + std::to_string(p.row) + "\n";
    return out;
}

}  // namespace carpet_recur
