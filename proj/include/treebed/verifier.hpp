#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treebed/embedding.hpp"

namespace treebed {

enum class SampleStrategy { Uniform, SameHorosphere, Vertical, NearPairs };

std::string to_string(SampleStrategy s);
SampleStrategy parse_strategy(const std::string& name);

struct SampleRegion {
    double t_min = -4.0;
    double t_max = 4.0;
    double x_radius = 625.0;  ///< coordinates drawn from [-x_radius, x_radius]^n
};

struct SamplePlan {
    SampleRegion region;
    std::size_t count = 1000;
    SampleStrategy strategy = SampleStrategy::Uniform;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on an empty or inverted region.
    void validate() const;
};

/// t in [-4, 4], x_radius = p^4.
SampleRegion default_region(const Params& P);

struct PointPair {
    HoroPoint a;
    HoroPoint b;
};

/// Deterministic in (plan, P). Pairs are drawn in fixed-size chunks, each with
/// its own generator seeded from (seed, chunk index).
std::vector<PointPair> sample_pairs(const Params& P, const SamplePlan& plan);

struct DistortionSample {
    double d_hyp = 0.0;
    double d_tree = 0.0;
    std::vector<std::int64_t> per_color;
};

/// Additive/multiplicative constants: d_tree <= l d_hyp + m and
/// d_hyp <= l d_tree + m.
struct QiFit {
    double l = 1.0;
    double m = 0.0;
};

struct DistortionReport {
    std::vector<DistortionSample> samples;
    std::optional<QiFit> fit;
    /// Fitting-set samples that break the fitted inequalities.
    std::size_t violations = 0;
    /// Samples with d_hyp below kMinFitDistance, recorded but not fitted.
    std::size_t excluded = 0;
    std::optional<double> runtime_ms;
};

/// Pairs closer than this sit in the additive-constant regime and do not
/// constrain the slope.
inline constexpr double kMinFitDistance = 0.1;

struct EvalOptions {
    ProductNorm norm = ProductNorm::L1;
    int scan_cap = kDefaultScanCap;
    unsigned threads = 1;
    LevelPolicy policy = LevelPolicy::Rounded;
};

/// Hyperbolic and tree-product distance of each pair. Results do not depend
/// on the thread count.
DistortionReport evaluate_pairs(const Params& P, std::span<const PointPair> pairs,
                                const EvalOptions& options = {});

/// {0, 1, ..., 10}. Larger additive constants let m soak up the whole
/// sampled distance range, after which every map (including non-embeddings)
/// fits with l = 1.
std::vector<double> default_m_grid();

/// {0, 1, ..., m_max}
std::vector<double> integer_m_grid(int m_max);

/// Picks (l, m) with m from the grid minimizing l (ties to the smaller m);
/// l is never below 1. l is +inf when no m in the grid is feasible.
DistortionReport fit_qi_constants(DistortionReport report, std::span<const double> m_grid);

/// Fitting-set samples of `report` violating `fit`.
std::size_t count_violations(const DistortionReport& report, const QiFit& fit);

struct CheckReport {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;

    bool passed() const { return failures == 0; }
};

/// For vertical pairs (k, x), (k', x) checks
///   max_c d_{T_c}(f_c z, f_c z') >= (|k' - k| + 1) / (n + 1) - 1.
CheckReport vertical_bound_check(const Params& P, std::size_t count, std::uint64_t seed,
                                 const EvalOptions& options = {});
CheckReport vertical_bound_check(const Params& P, const SamplePlan& plan,
                                 const EvalOptions& options = {});

/// Vertical pairs only; checks the bound on precomputed samples.
CheckReport vertical_bound_check(const Params& P, std::span<const PointPair> pairs,
                                 const DistortionReport& report);

struct SeparationPlan {
    std::size_t count = 10'000;
    std::uint64_t seed = 1;
    int k_min = -3;
    int k_max = 4;
    /// |gamma_i| bound for uniformly drawn cubes; <= 0 means p^3.
    std::int64_t gamma_bound = 0;
    /// Share of pairs built around a common point (the lower cube is the one
    /// nearest to the center of the higher one) rather than drawn
    /// independently; independent pairs are almost always far apart.
    double near_fraction = 0.5;
};

struct SeparationCheck {
    std::size_t checked = 0;
    std::size_t disjoint_far = 0;
    std::size_t nested_deep = 0;
    std::size_t violations = 0;
    std::vector<std::string> witnesses;

    bool passed() const { return violations == 0; }
};

/// Random same-color pairs with levels in [k_min, k_max], classified
/// exactly by separation_verdict.
SeparationCheck separation_check(const Params& P, const SeparationPlan& plan);

struct TrendReport {
    std::vector<double> scales;
    std::vector<QiFit> fits;
    /// max over consecutive scales of (l_{i+1} - l_i) / l_i; 0 for one scale.
    double max_relative_increase = 0.0;
    /// Same with |l_{i+1} - l_i|.
    double max_relative_change = 0.0;
};

/// Heights and horizontal radius multiplied by s. Distances in the region
/// grow roughly linearly in s since the height range dominates them.
SampleRegion scale_region(const SampleRegion& region, double s);

TrendReport stability_probe(const Params& P, const SamplePlan& base_plan,
                            std::span<const double> scales, const EvalOptions& options = {},
                            std::span<const double> m_grid = {});

}  // namespace treebed
