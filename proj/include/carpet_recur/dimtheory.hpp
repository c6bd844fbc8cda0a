#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/rate.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace carpet_recur {

/// Weights over a carpet's alphabet (in alphabet order) with their column
/// marginals p_{a1} = sum of p_b over cells b in column a1.
class ProbabilityVector {
public:
    ProbabilityVector(const Carpet& carpet, std::vector<double> weights);

    static ProbabilityVector uniform(const Carpet& carpet);

    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    /// Marginals indexed by column-profile slot.
    [[nodiscard]] std::span<const double> marginals() const noexcept { return marginals_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return weights_[i]; }
    [[nodiscard]] bool strictly_positive() const noexcept;

private:
    std::vector<double> weights_;
    std::vector<double> marginals_;
};

struct Entropies {
    double joint = 0.0;     // H
    double column = 0.0;    // H1, entropy of the column marginal
    double row = 0.0;       // H2, conditional entropy of the row given the column
};

Entropies entropies(const Carpet& carpet, const ProbabilityVector& p);

/// tau1 with its companion tau2. With `independent` unset the pair must obey
/// tau2 = tau1 * log_{m2} m1 (one rate function drives both coordinates).
struct TauPair {
    Tau tau1;
    double tau2 = 0.0;
    bool independent = false;  // exploratory override, not a recurrence-set quantity
};

TauPair linked_taus(const Carpet& carpet, Tau tau1);
TauPair linked_taus(const Carpet& carpet, const RateFunction& rate);

enum class DimCase { Case1, Case2, EdgeNegativeTau, EdgeInfiniteTau };

std::string_view dim_case_name(DimCase c) noexcept;

struct NamedValue {
    std::string label;
    double value = 0.0;
};

/// Value of the recurrent-set dimension formula with the competing
/// expressions it minimises over. `active` names the minimiser, or "both"
/// when the two agree to 1e-12 relative.
struct DimReport {
    double value = 0.0;
    DimCase case_tag = DimCase::Case1;
    std::vector<NamedValue> expressions;
    std::string active;
};

/// Closed-form dimension of the recurrent set for a uniform-fibre carpet.
/// Throws NonUniformFibre or InvalidTauPair.
DimReport theorem_dimension(const Carpet& carpet, const TauPair& taus);

enum class ObjectiveForm {
    Corrected,  // H1 weighted by 1/log m1, H2 by 1/log m2
    Printed,    // roles of H1 and H2 swapped in the first term; for comparison only
};

double lower_objective(const Carpet& carpet, const ProbabilityVector& p, const TauPair& taus,
                       ObjectiveForm form = ObjectiveForm::Corrected);

struct MaximizeOptions {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    int random_restarts = 8;
    int iterations_per_stage = 400;
    bool grid_check = true;  // dense simplex grid when |A| <= 6
    int grid_resolution = 12;
    ObjectiveForm form = ObjectiveForm::Corrected;
};

struct MaximizeResult {
    std::vector<double> weights;
    double value = 0.0;
};

/// Maximises lower_objective over the probability simplex by projected
/// gradient ascent on a log-sum-exp smoothing of the min with a decreasing
/// temperature, restarted from uniform and from random points.
MaximizeResult maximize_objective(const Carpet& carpet, const TauPair& taus, const MaximizeOptions& opts = {});

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace carpet_recur
