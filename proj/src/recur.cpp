#include "carpet_recur/recur.hpp"

#include "carpet_recur/error.hpp"
#include "parallel.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_set>

namespace carpet_recur {

std::string_view recurrence_name(Recurrence r) noexcept {
    switch (r) {
        case Recurrence::Yes: return "yes";
        case Recurrence::No: return "no";
        case Recurrence::Unknown: return "unknown";
    }
    return "unknown";
}

Recurrence is_recurrent_at(const SymbolicPoint& x, std::size_t n, const RateThreshold& psi) {
    bool all_yes = true;
    for (Axis axis : {Axis::First, Axis::Second}) {
        auto b = return_distance_bounds_scaled(x, n, axis);
        if (!psi.exceeds(b.lo, b.scale)) return Recurrence::No;
        if (!psi.exceeds(b.hi, b.scale)) all_yes = false;
    }
    return all_yes ? Recurrence::Yes : Recurrence::Unknown;
}

Recurrence is_recurrent_at(const SymbolicPoint& x, std::size_t n, const RateFunction& rate) {
    if (n >= x.depth()) {
        fail(ErrorCode::ShiftTooDeep, "recurrence at time " + std::to_string(n) + " needs depth > " + std::to_string(n));
    }
    return is_recurrent_at(x, n, rate.threshold(static_cast<long>(n)));
}

namespace {

Integer horner(std::span<const Digit> digits, int base) {
    Integer acc = 0;
    for (Digit d : digits) {
        acc *= base;
        acc += d;
    }
    return acc;
}

int axis_index(Axis axis) { return axis == Axis::First ? 0 : 1; }

Rational ratio(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

FixedPointBox::FixedPointBox(const CylinderWord& w, RateThreshold psi)
    : n_(w.first.size()), bases_(w.bases), psi_(std::move(psi)) {
    if (w.first.size() != w.second.size() || w.first.empty()) {
        fail(ErrorCode::InvalidArgument, "fixed-point box needs a word of A^n with n >= 1");
    }
    for (Axis axis : {Axis::First, Axis::Second}) {
        int i = axis_index(axis);
        int m = base_of(bases_, axis);
        numer_[i] = horner(axis == Axis::First ? std::span<const Digit>(w.first) : std::span<const Digit>(w.second), m);
        denom_[i] = ipow(m, n_) - 1;
    }
    center_ = {ratio(numer_[0], denom_[0]), ratio(numer_[1], denom_[1])};
    cylinder_ = cylinder_rect(w);
    // The box pokes out of I(w) when its half-width exceeds the distance from
    // the centre to a side.
    clipped_ = within(Axis::First, center_.x - cylinder_.x_lo) || within(Axis::First, cylinder_.x_hi - center_.x) ||
               within(Axis::Second, center_.y - cylinder_.y_lo) || within(Axis::Second, cylinder_.y_hi - center_.y);
}

bool FixedPointBox::within(Axis axis, const Rational& offset) const {
    int i = axis_index(axis);
    Rational scaled = abs(offset) * denom_[i];
    return psi_.exceeds(scaled);
}

double FixedPointBox::half_width(Axis axis) const {
    return std::exp(psi_.log_value()) / denom_[axis_index(axis)].get_d();
}

bool FixedPointBox::contains(const ExactPoint& p) const {
    return within(Axis::First, p.x - center_.x) && within(Axis::Second, p.y - center_.y);
}

bool FixedPointBox::meets(Axis axis, const Rational& lo, const Rational& hi) const {
    const Rational& c = axis == Axis::First ? center_.x : center_.y;
    int i = axis_index(axis);
    if (lo > c) {
        Rational gap = (lo - c) * denom_[i];
        if (!psi_.exceeds(gap)) return false;
    }
    if (hi < c) {
        Rational gap = (c - hi) * denom_[i];
        if (!psi_.exceeds(gap)) return false;
    }
    return true;
}

bool FixedPointBox::inside_cover_rectangle() const {
    // psi / (m^n - 1) <= 2 psi m^-n  <=>  m^n <= 2 (m^n - 1)
    for (Axis axis : {Axis::First, Axis::Second}) {
        int i = axis_index(axis);
        Integer mn = denom_[i] + 1;
        if (mn > 2 * denom_[i]) return false;
    }
    return true;
}

FixedPointBox fixed_point_rect(const CylinderWord& w, const RateFunction& rate) {
    if (w.bases != rate.bases()) fail(ErrorCode::InvalidArgument, "word and rate use different bases");
    return FixedPointBox(w, rate.threshold(static_cast<long>(w.first.size())));
}

long covering_level(const RateFunction& rate, std::size_t n, Axis axis) {
    PowerProduct x = rate.inverse_psi(static_cast<long>(n));
    x.multiply(Rational(4), Rational(-1));
    x.multiply(Rational(base_of(rate.bases(), axis)), Rational(static_cast<long>(n)));
    return ceil_log(x, rate.bases().m1);
}

CoverBudget CoverBudget::from_env() {
    CoverBudget budget;
    const char* raw = std::getenv("CARPET_RECUR_BUDGET");
    if (raw == nullptr || *raw == '\0') return budget;
    std::string_view text(raw);
    auto comma = text.find(',');
    try {
        budget.cylinders = static_cast<std::uint64_t>(parse_count(text.substr(0, comma)));
        if (comma != std::string_view::npos) {
            budget.square_tests = static_cast<std::uint64_t>(parse_count(text.substr(comma + 1)));
        }
    } catch (const Error&) {
        fail(ErrorCode::InvalidArgument, "CARPET_RECUR_BUDGET must be '<cylinders>[,<tests>]'");
    }
    if (budget.cylinders == 0 || budget.square_tests == 0) {
        fail(ErrorCode::InvalidArgument, "CARPET_RECUR_BUDGET values must be positive");
    }
    return budget;
}

namespace {

class SquareSearch {
public:
    SquareSearch(const Carpet& carpet, std::size_t n, std::size_t level, std::size_t height,
                 std::atomic<std::uint64_t>& tests, std::uint64_t test_budget)
        : carpet_(carpet),
          n_(n),
          level_(level),
          height_(height),
          first_len_(std::max(level, n)),
          second_len_(std::max(height, n)),
          tests_(tests),
          test_budget_(test_budget) {
        pow1_.resize(first_len_ + 1);
        pow2_.resize(second_len_ + 1);
        pow1_[0] = pow2_[0] = 1;
        for (std::size_t k = 1; k <= first_len_; ++k) pow1_[k] = pow1_[k - 1] * carpet.m1();
        for (std::size_t k = 1; k <= second_len_; ++k) pow2_[k] = pow2_[k - 1] * carpet.m2();
        x_.resize(first_len_ + 1);
        y_.resize(second_len_ + 1);
        d1_.resize(first_len_);
        d2_.resize(second_len_);
        for (const auto& col : carpet.column_profile()) columns_.push_back(col.column);
    }

    void run(const CylinderWord& w, const FixedPointBox& box, std::unordered_set<std::string>& keys) {
        w_ = &w;
        box_ = &box;
        keys_ = &keys;
        x_[0] = 0;
        y_[0] = 0;
        descend(0);
    }

    void flush() {
        tests_.fetch_add(pending_);
        pending_ = 0;
    }

private:
    void count_test() {
        if (++pending_ >= 1024) {
            auto total = tests_.fetch_add(pending_) + pending_;
            pending_ = 0;
            if (total > test_budget_) {
                fail(ErrorCode::BudgetExceeded, "square-test budget of " + std::to_string(test_budget_) +
                                                    " exceeded (set CARPET_RECUR_BUDGET to raise it)");
            }
        }
    }

    bool place(std::size_t k, int column, int row, bool with_row) {
        count_test();
        d1_[k] = static_cast<Digit>(column);
        x_[k + 1] = x_[k] * carpet_.m1() + column;
        if (!box_->meets(Axis::First, ratio(x_[k + 1], pow1_[k + 1]), ratio(x_[k + 1] + 1, pow1_[k + 1]))) {
            return false;
        }
        if (with_row) {
            d2_[k] = static_cast<Digit>(row);
            y_[k + 1] = y_[k] * carpet_.m2() + row;
            if (!box_->meets(Axis::Second, ratio(y_[k + 1], pow2_[k + 1]), ratio(y_[k + 1] + 1, pow2_[k + 1]))) {
                return false;
            }
        }
        return true;
    }

    void descend(std::size_t k) {
        if (k == first_len_) {
            std::string key;
            key.reserve(level_ + height_);
            for (std::size_t i = 0; i < level_; ++i) key.push_back(static_cast<char>(d1_[i]));
            for (std::size_t i = 0; i < height_; ++i) key.push_back(static_cast<char>(d2_[i]));
            keys_->insert(std::move(key));
            return;
        }
        if (k < n_) {
            if (place(k, w_->first[k], w_->second[k], true)) descend(k + 1);
        } else if (k < second_len_) {
            for (const auto& pair : carpet_.alphabet()) {
                if (place(k, pair.column, pair.row, true)) descend(k + 1);
            }
        } else {
            for (int column : columns_) {
                if (place(k, column, 0, false)) descend(k + 1);
            }
        }
    }

    const Carpet& carpet_;
    std::size_t n_, level_, height_, first_len_, second_len_;
    std::atomic<std::uint64_t>& tests_;
    std::uint64_t test_budget_;
    std::uint64_t pending_ = 0;
    std::vector<Integer> pow1_, pow2_, x_, y_;
    std::vector<Digit> d1_, d2_;
    std::vector<int> columns_;
    const CylinderWord* w_ = nullptr;
    const FixedPointBox* box_ = nullptr;
    std::unordered_set<std::string>* keys_ = nullptr;
};

}  // namespace

std::uint64_t exact_cover_count(const Carpet& carpet, const RateFunction& rate, std::size_t n, long level,
                                const CoverBudget& budget, unsigned threads) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "cover counts need n >= 1");
    if (carpet.bases() != rate.bases()) fail(ErrorCode::InvalidArgument, "carpet and rate use different bases");
    const std::uint64_t alphabet = carpet.size();
    std::uint64_t cylinders = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (cylinders > budget.cylinders / alphabet) {
            fail(ErrorCode::BudgetExceeded, "|A|^n exceeds the cylinder budget of " + std::to_string(budget.cylinders) +
                                                " (set CARPET_RECUR_BUDGET to raise it)");
        }
        cylinders *= alphabet;
    }
    if (cylinders > budget.cylinders) {
        fail(ErrorCode::BudgetExceeded, "|A|^n exceeds the cylinder budget of " + std::to_string(budget.cylinders));
    }
    const std::size_t lvl = static_cast<std::size_t>(std::max(0L, level));
    const std::size_t height = approx_square_height(carpet.bases(), lvl);
    const RateThreshold psi = rate.threshold(static_cast<long>(n));

    threads = std::max(1u, threads);
    std::vector<std::unordered_set<std::string>> partial(threads);
    std::atomic<std::uint64_t> tests{0};
    detail::parallel_chunks(cylinders, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        SquareSearch search(carpet, n, lvl, height, tests, budget.square_tests);
        CylinderWord w{carpet.bases(), std::vector<Digit>(n), std::vector<Digit>(n)};
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t k = n; k-- > 0;) {
                const auto& pair = carpet.alphabet()[rest % alphabet];
                rest /= alphabet;
                w.first[k] = static_cast<Digit>(pair.column);
                w.second[k] = static_cast<Digit>(pair.row);
            }
            FixedPointBox box(w, psi);
            search.run(w, box, partial[worker]);
        }
        search.flush();
    });
    if (tests.load() > budget.square_tests) {
        fail(ErrorCode::BudgetExceeded, "square-test budget of " + std::to_string(budget.square_tests) + " exceeded");
    }
    auto& merged = partial[0];
    for (unsigned w = 1; w < threads; ++w) merged.merge(partial[w]);
    return merged.size();
}

double paper_cover_bound(const Carpet& carpet, const RateFunction& rate, std::size_t n, Axis axis) {
    auto fibre = carpet.fibre_size();
    if (!fibre) fail(ErrorCode::NonUniformFibre, "cover bounds need a uniform-fibre carpet");
    const double log_m = std::log(static_cast<double>(carpet.column_count()));
    const double log_mn = log_m + std::log(static_cast<double>(*fibre));
    const double nn = static_cast<double>(n);
    const double l1 = std::log(static_cast<double>(carpet.m1()));
    const double l2 = std::log(static_cast<double>(carpet.m2()));
    if (axis == Axis::Second) {
        return std::exp(std::log(9.0) + (l2 / l1 - 1.0) * nn * log_m + nn * log_mn);
    }
    const long level = covering_level(rate, n, Axis::First);
    const bool refined = level <= 0 || approx_square_height(carpet.bases(), static_cast<std::size_t>(level)) <= n;
    if (!refined) return std::exp(std::log(9.0) + nn * log_mn);
    const double r = carpet.bases().log_ratio();
    const double ell2 = rate.ell(Axis::Second, static_cast<long>(n));
    return std::exp(std::log(3.0) + (r * nn + ell2) * log_mn + ((1.0 - r) * nn - ell2) * log_m);
}

std::vector<CoverReport> verify_covering(const Carpet& carpet, const RateFunction& rate, std::size_t n_first,
                                         std::size_t n_last, Axis axis, const CoverBudget& budget, unsigned threads) {
    if (n_first == 0 || n_last < n_first) fail(ErrorCode::InvalidArgument, "n range must satisfy 1 <= first <= last");
    std::vector<CoverReport> reports;
    for (std::size_t n = n_first; n <= n_last; ++n) {
        CoverReport rep;
        rep.n = n;
        rep.axis = axis;
        rep.level = covering_level(rate, n, axis);
        rep.exact_count = exact_cover_count(carpet, rate, n, rep.level, budget, threads);
        rep.bound = paper_cover_bound(carpet, rate, n, axis);
        rep.slack = rep.exact_count == 0 ? std::numeric_limits<double>::infinity()
                                         : rep.bound / static_cast<double>(rep.exact_count);
        // The bound is evaluated in floating point; allow for its rounding only.
        rep.satisfied = static_cast<double>(rep.exact_count) <= rep.bound * (1.0 + 1e-12);
        reports.push_back(rep);
    }
    return reports;
}

}  // namespace carpet_recur
