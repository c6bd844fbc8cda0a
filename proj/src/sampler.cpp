#include "carpet_recur/sampler.hpp"

#include "carpet_recur/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <optional>

namespace carpet_recur {

namespace {

std::size_t clamped_hat_ell(const RateFunction& rate, Axis axis, std::size_t n) {
    return static_cast<std::size_t>(std::max(0L, rate.hat_ell(axis, static_cast<long>(n))));
}

}  // namespace

Schedule make_schedule(const RateFunction& rate, std::size_t target_depth, int growth_margin, std::size_t first) {
    if (growth_margin < 2) fail(ErrorCode::InvalidArgument, "growth margin must be at least 2");
    if (first < 1) fail(ErrorCode::InvalidArgument, "first scheduled time must be at least 1");
    if (!rate.is_power_exp()) fail(ErrorCode::InvalidArgument, "schedules need a powexp rate");
    Schedule s;
    s.growth_margin = growth_margin;
    s.first = first;
    std::size_t n = first;
    std::size_t sum = 0;
    for (std::size_t i = 1;; ++i) {
        if (n + clamped_hat_ell(rate, Axis::First, n) > target_depth) break;
        s.times.push_back(n);
        sum += n;
        std::size_t factor = static_cast<std::size_t>(growth_margin) << (i + 1);
        if (sum > target_depth || factor > target_depth) break;
        n = factor * sum;
    }
    if (s.times.empty()) {
        fail(ErrorCode::DepthTooSmall, "depth " + std::to_string(target_depth) + " cannot hold n_1 = " +
                                           std::to_string(first) + " plus its repeat window of " +
                                           std::to_string(clamped_hat_ell(rate, Axis::First, first)) + " digits");
    }
    return s;
}

std::vector<PositionRule> sampling_plan(const SampleConfig& cfg) {
    if (!cfg.rate.is_power_exp()) fail(ErrorCode::InvalidArgument, "sampling needs a powexp rate");
    if (cfg.rate.bases() != cfg.carpet.bases()) fail(ErrorCode::InvalidArgument, "rate and carpet use different bases");
    if (cfg.weights.weights().size() != cfg.carpet.size()) {
        fail(ErrorCode::InvalidArgument, "weights do not match the carpet alphabet");
    }
    for (double q : cfg.weights.marginals()) {
        if (q <= 0.0) fail(ErrorCode::ZeroConditional, "a column of the carpet has zero probability");
    }
    if (!cfg.weights.strictly_positive()) fail(ErrorCode::InvalidArgument, "sampling weights must all be positive");
    if (cfg.depth == 0) fail(ErrorCode::InvalidArgument, "sampling depth must be at least 1");

    std::vector<PositionRule> plan(cfg.depth);
    std::size_t previous_end = 0;
    for (std::size_t n : cfg.schedule.times) {
        std::size_t l1 = clamped_hat_ell(cfg.rate, Axis::First, n);
        std::size_t l2 = clamped_hat_ell(cfg.rate, Axis::Second, n);
        if (n < previous_end) {
            fail(ErrorCode::InvalidArgument, "scheduled time " + std::to_string(n) + " falls inside the previous repeat window");
        }
        if (n + l1 > cfg.depth) {
            fail(ErrorCode::DepthTooSmall, "depth " + std::to_string(cfg.depth) + " cannot hold time " +
                                               std::to_string(n) + " plus " + std::to_string(l1) + " repeated digits");
        }
        for (std::size_t j = 0; j < l1; ++j) {
            auto kind = j < l2 ? PositionRule::Kind::CopyBoth : PositionRule::Kind::CopyColumn;
            plan[n + j] = {kind, static_cast<std::uint32_t>(j)};
        }
        previous_end = n + l1;
    }
    return plan;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

// The root is mixed before the xor so that nearby roots do not produce the
// same set of streams in a different order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(root) ^ index);
}

double unit_uniform(std::mt19937_64& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

class DigitDrawer {
public:
    explicit DigitDrawer(const SampleConfig& cfg) : carpet_(cfg.carpet) {
        auto w = cfg.weights.weights();
        double acc = 0.0;
        for (double p : w) cumulative_.push_back(acc += p);
        for (int slot = 0; slot < carpet_.column_count(); ++slot) {
            std::vector<double> cum;
            double inner = 0.0;
            double total = cfg.weights.marginals()[static_cast<std::size_t>(slot)];
            for (std::size_t idx : carpet_.slot_members(slot)) cum.push_back(inner += w[idx] / total);
            conditional_.push_back(std::move(cum));
        }
    }

    [[nodiscard]] std::size_t draw(std::mt19937_64& rng) const { return pick(cumulative_, unit_uniform(rng)); }

    [[nodiscard]] std::size_t draw_in_column(int column, std::mt19937_64& rng) const {
        int slot = carpet_.column_slot(column);
        auto members = carpet_.slot_members(slot);
        return members[pick(conditional_[static_cast<std::size_t>(slot)], unit_uniform(rng))];
    }

private:
    static std::size_t pick(const std::vector<double>& cumulative, double u) {
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) return cumulative.size() - 1;
        return static_cast<std::size_t>(it - cumulative.begin());
    }

    const Carpet& carpet_;
    std::vector<double> cumulative_;
    std::vector<std::vector<double>> conditional_;
};

SymbolicPoint draw_point(const SampleConfig& cfg, const std::vector<PositionRule>& plan, const DigitDrawer& drawer,
                         std::uint64_t index) {
    std::mt19937_64 rng(derive_seed(cfg.seed, index));
    std::vector<Digit> first(cfg.depth), second(cfg.depth);
    auto alphabet = cfg.carpet.alphabet();
    for (std::size_t j = 0; j < cfg.depth; ++j) {
        const auto& rule = plan[j];
        switch (rule.kind) {
            case PositionRule::Kind::Free: {
                const auto& pair = alphabet[drawer.draw(rng)];
                first[j] = static_cast<Digit>(pair.column);
                second[j] = static_cast<Digit>(pair.row);
                break;
            }
            case PositionRule::Kind::CopyBoth:
                first[j] = first[rule.source];
                second[j] = second[rule.source];
                break;
            case PositionRule::Kind::CopyColumn: {
                first[j] = first[rule.source];
                second[j] = static_cast<Digit>(alphabet[drawer.draw_in_column(first[j], rng)].row);
                break;
            }
        }
    }
    return SymbolicPoint(cfg.carpet.bases(), std::move(first), std::move(second));
}

}  // namespace

SymbolicPoint sample_point(const SampleConfig& cfg, std::uint64_t index) {
    auto plan = sampling_plan(cfg);
    DigitDrawer drawer(cfg);
    return draw_point(cfg, plan, drawer, index);
}

std::vector<SymbolicPoint> sample_points(const SampleConfig& cfg, std::size_t count, unsigned threads) {
    auto plan = sampling_plan(cfg);
    DigitDrawer drawer(cfg);
    std::vector<std::optional<SymbolicPoint>> slots(count);
    detail::parallel_chunks(count, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t i = begin; i < end; ++i) slots[i].emplace(draw_point(cfg, plan, drawer, i));
    });
    std::vector<SymbolicPoint> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

namespace {

template <class Real, class Weight>
Real mass_product(const SampleConfig& cfg, const CylinderWord& w, Weight weight) {
    if (w.first.size() != w.second.size()) {
        fail(ErrorCode::UnsupportedLength, "cylinder mass needs equal word lengths in both coordinates");
    }
    if (w.first.size() > cfg.depth) {
        fail(ErrorCode::UnsupportedLength, "cylinder length " + std::to_string(w.first.size()) +
                                               " exceeds the sampling depth " + std::to_string(cfg.depth));
    }
    auto plan = sampling_plan(cfg);
    Real mass = 1;
    for (std::size_t j = 0; j < w.first.size(); ++j) {
        auto idx = cfg.carpet.index_of({w.first[j], w.second[j]});
        if (!idx) return Real(0);
        const auto& rule = plan[j];
        switch (rule.kind) {
            case PositionRule::Kind::Free: mass *= weight(*idx); break;
            case PositionRule::Kind::CopyBoth:
                if (w.first[j] != w.first[rule.source] || w.second[j] != w.second[rule.source]) return Real(0);
                break;
            case PositionRule::Kind::CopyColumn: {
                if (w.first[j] != w.first[rule.source]) return Real(0);
                Real column_total = 0;
                for (std::size_t m : cfg.carpet.slot_members(cfg.carpet.slot_of(*idx))) column_total += weight(m);
                mass *= weight(*idx) / column_total;
                break;
            }
        }
    }
    return mass;
}

}  // namespace

double cylinder_mass(const SampleConfig& cfg, const CylinderWord& w) {
    auto p = cfg.weights.weights();
    return mass_product<double>(cfg, w, [&](std::size_t i) { return p[i]; });
}

Rational cylinder_mass_exact(const SampleConfig& cfg, const CylinderWord& w) {
    auto p = cfg.weights.weights();
    return mass_product<Rational>(cfg, w, [&](std::size_t i) { return Rational(p[i]); });
}

}  // namespace carpet_recur
