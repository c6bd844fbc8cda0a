#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace carpet_recur {

using Digit = std::uint8_t;

/// Largest supported base. Digit strings in the point-cloud format use one
/// character per digit (0-9a-z).
inline constexpr int kMaxBase = 36;

/// Horizontal base m1 (columns) and vertical base m2 (rows), 2 <= m1 <= m2.
struct Bases {
    int m1 = 2;
    int m2 = 2;

    static Bases checked(int m1, int m2);

    /// log_{m2} m1, in (0, 1].
    [[nodiscard]] double log_ratio() const noexcept;

    friend bool operator==(const Bases&, const Bases&) = default;
};

/// A chosen cell: `column` is the base-m1 digit, `row` the base-m2 digit.
struct DigitPair {
    int column = 0;
    int row = 0;

    friend auto operator<=>(const DigitPair&, const DigitPair&) = default;
};

struct ColumnCount {
    int column = 0;
    int count = 0;

    friend bool operator==(const ColumnCount&, const ColumnCount&) = default;
};

/// A Bedford-McMullen carpet given by its bases and digit alphabet. Immutable
/// once built; the alphabet is stored sorted by (column, row), and that order
/// indexes probability vectors.
class Carpet {
public:
    [[nodiscard]] const Bases& bases() const noexcept { return bases_; }
    [[nodiscard]] int m1() const noexcept { return bases_.m1; }
    [[nodiscard]] int m2() const noexcept { return bases_.m2; }

    [[nodiscard]] std::span<const DigitPair> alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] std::size_t size() const noexcept { return alphabet_.size(); }

    /// Nonempty columns in ascending column order.
    [[nodiscard]] std::span<const ColumnCount> column_profile() const noexcept { return profile_; }
    /// M, the number of nonempty columns.
    [[nodiscard]] int column_count() const noexcept { return static_cast<int>(profile_.size()); }

    /// N when every nonempty column holds the same number of cells.
    [[nodiscard]] std::optional<int> fibre_size() const noexcept;

    [[nodiscard]] bool contains(DigitPair pair) const noexcept;
    [[nodiscard]] std::optional<std::size_t> index_of(DigitPair pair) const noexcept;

    /// Position of `column` in column_profile(), or -1 when the column is empty.
    [[nodiscard]] int column_slot(int column) const noexcept;
    /// Alphabet indices of the cells in the given profile slot.
    [[nodiscard]] std::span<const std::size_t> slot_members(int slot) const noexcept;
    /// Profile slot of each alphabet entry.
    [[nodiscard]] int slot_of(std::size_t alphabet_index) const noexcept { return slot_of_[alphabet_index]; }

    friend Carpet build_carpet(int m1, int m2, std::span<const DigitPair> pairs);

private:
    Carpet() = default;

    Bases bases_;
    std::vector<DigitPair> alphabet_;
    std::vector<ColumnCount> profile_;
    std::vector<int> column_to_slot_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<int> slot_of_;
};

/// Validates bases and pairs; throws EmptyAlphabet, DigitOutOfRange,
/// DuplicatePair or BadBases.
Carpet build_carpet(int m1, int m2, std::span<const DigitPair> pairs);

/// log_{m1} M + log_{m2}(|A| / M).
double box_dimension(const Carpet& carpet);

/// McMullen's formula log_{m1} sum_j N_j^{log_{m2} m1}.
double hausdorff_dimension(const Carpet& carpet);

bool is_uniform_fibre(const Carpet& carpet);

/// Parses the line-oriented carpet format:
///
///     # comment
///     bases <m1> <m2>
///     <column> <row>
///     ...
///
/// Anything after '#' is a comment; blank lines are skipped. Extra tokens,
/// signs, non-digit characters and duplicate pairs are rejected.
Carpet parse_carpet_spec(std::string_view text);
Carpet load_carpet_spec(const std::filesystem::path& path);
std::string format_carpet_spec(const Carpet& carpet);

}  // namespace carpet_recur
