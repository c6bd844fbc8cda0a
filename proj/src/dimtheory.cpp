#include "carpet_recur/dimtheory.hpp"

#include "carpet_recur/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace carpet_recur {

ProbabilityVector::ProbabilityVector(const Carpet& carpet, std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.size() != carpet.size()) {
        fail(ErrorCode::InvalidArgument, "probability vector has " + std::to_string(weights_.size()) +
                                             " weights, alphabet has " + std::to_string(carpet.size()));
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        fail(ErrorCode::InvalidArgument, "weights must sum to 1 (got " + std::to_string(total) + ")");
    }
    marginals_.assign(static_cast<std::size_t>(carpet.column_count()), 0.0);
    for (std::size_t i = 0; i < weights_.size(); ++i) marginals_[carpet.slot_of(i)] += weights_[i];
}

ProbabilityVector ProbabilityVector::uniform(const Carpet& carpet) {
    return ProbabilityVector(carpet, std::vector<double>(carpet.size(), 1.0 / static_cast<double>(carpet.size())));
}

bool ProbabilityVector::strictly_positive() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Entropies entropies_of(const Carpet& carpet, std::span<const double> w, std::span<const double> marginals) {
    Entropies e;
    for (std::size_t i = 0; i < w.size(); ++i) {
        e.joint -= xlogx(w[i]);
        if (w[i] > 0.0) e.row -= w[i] * std::log(w[i] / marginals[carpet.slot_of(i)]);
    }
    for (double q : marginals) e.column -= xlogx(q);
    return e;
}

}  // namespace

Entropies entropies(const Carpet& carpet, const ProbabilityVector& p) {
    return entropies_of(carpet, p.weights(), p.marginals());
}

TauPair linked_taus(const Carpet& carpet, Tau tau1) {
    TauPair pair;
    pair.tau1 = tau1;
    double ratio = carpet.bases().log_ratio();
    switch (tau1.kind) {
        case Tau::Kind::Finite:
        case Tau::Kind::Negative: pair.tau2 = tau1.value * ratio; break;
        case Tau::Kind::Infinite: pair.tau2 = std::numeric_limits<double>::infinity(); break;
    }
    return pair;
}

TauPair linked_taus(const Carpet& carpet, const RateFunction& rate) {
    return linked_taus(carpet, rate.tau(Axis::First));
}

std::string_view dim_case_name(DimCase c) noexcept {
    switch (c) {
        case DimCase::Case1: return "case1";
        case DimCase::Case2: return "case2";
        case DimCase::EdgeNegativeTau: return "negative-tau";
        case DimCase::EdgeInfiniteTau: return "infinite-tau";
    }
    return "unknown";
}

namespace {

int require_uniform(const Carpet& carpet) {
    auto n = carpet.fibre_size();
    if (!n) {
        std::string profile;
        for (const auto& col : carpet.column_profile()) {
            if (!profile.empty()) profile += ", ";
            profile += std::to_string(col.column) + ":" + std::to_string(col.count);
        }
        fail(ErrorCode::NonUniformFibre, "carpet columns hold different numbers of cells (column:count = " +
                                             profile + ")");
    }
    return *n;
}

void check_taus(const Carpet& carpet, const TauPair& taus) {
    if (taus.tau1.kind != Tau::Kind::Finite) return;
    if (taus.independent) {
        if (!(taus.tau2 > -1.0) || std::isnan(taus.tau2)) fail(ErrorCode::InvalidTauPair, "tau2 must exceed -1");
        return;
    }
    double expected = taus.tau1.value * carpet.bases().log_ratio();
    if (!(std::fabs(taus.tau2 - expected) <= 1e-9 * (1.0 + std::fabs(expected)))) {
        fail(ErrorCode::InvalidTauPair, "tau2 = " + std::to_string(taus.tau2) + " breaks tau2 = tau1 * log_{m2} m1 = " +
                                            std::to_string(expected));
    }
}

bool first_case(const Carpet& carpet, double tau1) {
    double log_m1_m2 = carpet.m1() == carpet.m2()
                           ? 1.0
                           : std::log(static_cast<double>(carpet.m2())) / std::log(static_cast<double>(carpet.m1()));
    return log_m1_m2 > 1.0 + tau1;
}

std::string pick_active(const std::vector<NamedValue>& exprs) {
    const auto& a = exprs[0];
    const auto& b = exprs[1];
    if (std::fabs(a.value - b.value) <= 1e-12 * std::max(1.0, std::fabs(a.value))) return "both";
    return a.value < b.value ? a.label : b.label;
}

// Each competing expression is alpha * H1 + beta * H2.
struct Term {
    double alpha;
    double beta;
};

std::vector<Term> objective_terms(const Carpet& carpet, const TauPair& taus, ObjectiveForm form) {
    double l1 = std::log(static_cast<double>(carpet.m1()));
    double l2 = std::log(static_cast<double>(carpet.m2()));
    double tau1 = taus.tau1.kind == Tau::Kind::Negative ? 0.0 : taus.tau1.value;
    double tau2 = taus.tau1.kind == Tau::Kind::Negative ? 0.0 : taus.tau2;
    bool case1 = first_case(carpet, tau1);
    std::vector<Term> terms;
    if (form == ObjectiveForm::Corrected) {
        terms.push_back({1.0 / (l1 * (1.0 + tau2)), 1.0 / (l2 * (1.0 + tau2))});
        if (case1) terms.push_back({1.0 / ((1.0 + tau1) * l1), 1.0 / l2});
    } else {
        terms.push_back({1.0 / (l2 * (1.0 + tau2)), 1.0 / (l1 * (1.0 + tau2))});
        if (case1) terms.push_back({1.0 / l2, 1.0 / ((1.0 + tau1) * l1)});
    }
    if (!case1) terms.push_back({1.0 / ((1.0 + tau1) * l1), 1.0 / ((1.0 + tau1) * l1)});
    return terms;
}

double min_of_terms(const std::vector<Term>& terms, const Entropies& e) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : terms) best = std::min(best, t.alpha * e.column + t.beta * e.row);
    return best;
}

}  // namespace

DimReport theorem_dimension(const Carpet& carpet, const TauPair& taus) {
    const int n = require_uniform(carpet);
    check_taus(carpet, taus);
    DimReport report;
    if (taus.tau1.kind == Tau::Kind::Negative) {
        report.case_tag = DimCase::EdgeNegativeTau;
        report.value = hausdorff_dimension(carpet);
        report.expressions.push_back({"hausdorff", report.value});
        report.active = "edge";
        return report;
    }
    if (taus.tau1.kind == Tau::Kind::Infinite) {
        report.case_tag = DimCase::EdgeInfiniteTau;
        report.value = 0.0;
        report.expressions.push_back({"limit", 0.0});
        report.active = "edge";
        return report;
    }
    const double l1 = std::log(static_cast<double>(carpet.m1()));
    const double l2 = std::log(static_cast<double>(carpet.m2()));
    const double log_m1_big_m = std::log(static_cast<double>(carpet.column_count())) / l1;
    const double log_m2_n = std::log(static_cast<double>(n)) / l2;
    const double log_m1_n = std::log(static_cast<double>(n)) / l1;
    const double tau1 = taus.tau1.value;
    const double tau2 = taus.tau2;

    report.expressions.push_back({"tau2-cover", (log_m1_big_m + log_m2_n) / (1.0 + tau2)});
    if (first_case(carpet, tau1)) {
        report.case_tag = DimCase::Case1;
        report.expressions.push_back({"tau1-cover", log_m1_big_m / (1.0 + tau1) + log_m2_n});
    } else {
        report.case_tag = DimCase::Case2;
        report.expressions.push_back({"tau1-cover", (log_m1_big_m + log_m1_n) / (1.0 + tau1)});
    }
    report.value = std::min(report.expressions[0].value, report.expressions[1].value);
    report.active = pick_active(report.expressions);
    return report;
}

double lower_objective(const Carpet& carpet, const ProbabilityVector& p, const TauPair& taus, ObjectiveForm form) {
    require_uniform(carpet);
    check_taus(carpet, taus);
    if (taus.tau1.kind == Tau::Kind::Infinite) return 0.0;
    return min_of_terms(objective_terms(carpet, taus, form), entropies(carpet, p));
}

std::vector<double> project_to_simplex(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) theta = candidate;
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
    return out;
}

namespace {

class SimplexObjective {
public:
    SimplexObjective(const Carpet& carpet, std::vector<Term> terms) : carpet_(carpet), terms_(std::move(terms)) {}

    [[nodiscard]] Entropies entropies_at(std::span<const double> w) const {
        return entropies_of(carpet_, w, marginals(w));
    }

    [[nodiscard]] double value(std::span<const double> w) const { return min_of_terms(terms_, entropies_at(w)); }

    // -T log sum exp(-f_k / T)
    [[nodiscard]] double smoothed(std::span<const double> w, double temperature) const {
        auto e = entropies_at(w);
        double lowest = min_of_terms(terms_, e);
        double acc = 0.0;
        for (const auto& t : terms_) acc += std::exp(-(t.alpha * e.column + t.beta * e.row - lowest) / temperature);
        return lowest - temperature * std::log(acc);
    }

    [[nodiscard]] std::vector<double> smoothed_gradient(std::span<const double> w, double temperature) const {
        auto marg = marginals(w);
        auto e = entropies_of(carpet_, w, marg);
        std::vector<double> f(terms_.size());
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            f[k] = terms_[k].alpha * e.column + terms_[k].beta * e.row;
            lowest = std::min(lowest, f[k]);
        }
        double norm = 0.0;
        std::vector<double> weight(terms_.size());
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            weight[k] = std::exp(-(f[k] - lowest) / temperature);
            norm += weight[k];
        }
        double alpha = 0.0, beta = 0.0;
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            alpha += weight[k] / norm * terms_[k].alpha;
            beta += weight[k] / norm * terms_[k].beta;
        }
        constexpr double kFloor = 1e-300;
        std::vector<double> g(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            double log_p = std::log(std::max(w[i], kFloor));
            double log_col = std::log(std::max(marg[carpet_.slot_of(i)], kFloor));
            double d_column = -log_col - 1.0;
            double d_row = -log_p + log_col;
            g[i] = alpha * d_column + beta * d_row;
        }
        return g;
    }

private:
    [[nodiscard]] std::vector<double> marginals(std::span<const double> w) const {
        std::vector<double> m(static_cast<std::size_t>(carpet_.column_count()), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) m[carpet_.slot_of(i)] += w[i];
        return m;
    }

    const Carpet& carpet_;
    std::vector<Term> terms_;
};

struct Candidate {
    std::vector<double> weights;
    double value = -std::numeric_limits<double>::infinity();

    void offer(std::span<const double> w, double v) {
        if (v > value) {
            value = v;
            weights.assign(w.begin(), w.end());
        }
    }
};

void ascend(const SimplexObjective& objective, std::vector<double> p, const MaximizeOptions& opts, Candidate& best) {
    best.offer(p, objective.value(p));
    for (double temperature = 0.1; temperature > 1e-10; temperature *= 0.3) {
        double step = 1.0;
        double current = objective.smoothed(p, temperature);
        for (int iter = 0; iter < opts.iterations_per_stage; ++iter) {
            auto g = objective.smoothed_gradient(p, temperature);
            bool moved = false;
            while (step > 1e-14) {
                std::vector<double> trial(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) trial[i] = p[i] + step * g[i];
                trial = project_to_simplex(trial);
                double directional = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) directional += g[i] * (trial[i] - p[i]);
                double candidate = objective.smoothed(trial, temperature);
                if (candidate >= current + 1e-4 * directional && directional > 0.0) {
                    p = std::move(trial);
                    moved = candidate - current > 1e-15;
                    current = candidate;
                    step = std::min(1.0, step * 2.0);
                    break;
                }
                step *= 0.5;
            }
            best.offer(p, objective.value(p));
            if (!moved) break;
        }
    }
}

void grid_search(const SimplexObjective& objective, std::size_t dim, int resolution, Candidate& best) {
    std::vector<int> counts(dim, 0);
    std::vector<double> w(dim);
    // Enumerate compositions of `resolution` into `dim` nonnegative parts.
    auto visit = [&](auto&& self, std::size_t index, int remaining) -> void {
        if (index + 1 == dim) {
            counts[index] = remaining;
            for (std::size_t i = 0; i < dim; ++i) w[i] = static_cast<double>(counts[i]) / resolution;
            best.offer(w, objective.value(w));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[index] = c;
            self(self, index + 1, remaining - c);
        }
    };
    visit(visit, 0, resolution);
}

}  // namespace

MaximizeResult maximize_objective(const Carpet& carpet, const TauPair& taus, const MaximizeOptions& opts) {
    require_uniform(carpet);
    check_taus(carpet, taus);
    const std::size_t dim = carpet.size();
    if (taus.tau1.kind == Tau::Kind::Infinite) {
        return {std::vector<double>(dim, 1.0 / static_cast<double>(dim)), 0.0};
    }
    SimplexObjective objective(carpet, objective_terms(carpet, taus, opts.form));
    Candidate best;
    std::vector<double> uniform(dim, 1.0 / static_cast<double>(dim));
    if (dim == 1) return {uniform, objective.value(uniform)};

    ascend(objective, uniform, opts, best);
    std::mt19937_64 rng(opts.seed);
    for (int r = 0; r < opts.random_restarts; ++r) {
        std::vector<double> start(dim);
        double total = 0.0;
        for (auto& s : start) {
            double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            s = -std::log(u);
            total += s;
        }
        for (auto& s : start) s /= total;
        ascend(objective, start, opts, best);
    }
    if (opts.grid_check && dim <= 6) grid_search(objective, dim, opts.grid_resolution, best);
    return {best.weights, best.value};
}

}  // namespace carpet_recur
