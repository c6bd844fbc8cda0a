#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/dimtheory.hpp"
#include "carpet_recur/rate.hpp"
#include "carpet_recur/symbolic.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace carpet_recur {

/// Times n_1 < n_2 < ... after which digits are forced to repeat, with
/// n_{i+1} = growth_margin * 2^(i+1) * (n_1 + ... + n_i).
struct Schedule {
    std::vector<std::size_t> times;
    int growth_margin = 2;
    std::size_t first = 6;
};

/// Keeps every n_i with n_i + hat_ell_1(n_i) <= target_depth. Throws
/// DepthTooSmall when even n_1 does not fit.
Schedule make_schedule(const RateFunction& rate, std::size_t target_depth, int growth_margin = 2,
                       std::size_t first = 6);

struct SampleConfig {
    Carpet carpet;
    ProbabilityVector weights;  // strictly positive
    RateFunction rate;          // powexp only
    Schedule schedule;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
};

/// How each digit position is produced.
struct PositionRule {
    enum class Kind : std::uint8_t { Free, CopyBoth, CopyColumn };
    Kind kind = Kind::Free;
    std::uint32_t source = 0;  // 0-based position copied from
};

/// Per-position rules derived from a validated config. Throws
/// InvalidArgument, DepthTooSmall or ZeroConditional.
std::vector<PositionRule> sampling_plan(const SampleConfig& cfg);

/// Seed of the stream that produces point `index`:
/// splitmix64(splitmix64(root) ^ index).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_uniform(std::mt19937_64& rng) noexcept;

/// Point number `index` of the stream rooted at cfg.seed.
SymbolicPoint sample_point(const SampleConfig& cfg, std::uint64_t index = 0);

/// Points 0..count-1; the result does not depend on `threads`.
std::vector<SymbolicPoint> sample_points(const SampleConfig& cfg, std::size_t count, unsigned threads = 1);

/// mu of the cylinder of w (equal lengths in both coordinates, at most
/// cfg.depth): product of p over free positions, conditional row weights over
/// column-only copies, and 0 when a copy constraint is broken. Throws
/// UnsupportedLength for longer words.
double cylinder_mass(const SampleConfig& cfg, const CylinderWord& w);
Rational cylinder_mass_exact(const SampleConfig& cfg, const CylinderWord& w);

}  // namespace carpet_recur
