#pragma once

#include <span>
#include <vector>

#include "treebed/core.hpp"

namespace treebed {

/// Point (t, x) of the rescaled hyperbolic space R x R^n with metric
/// ds^2 = dt^2 + p^{2t} |dx|^2. The sets {t} x R^n are horospheres.
struct HoroPoint {
    double t = 0.0;
    std::vector<double> x;

    bool operator==(const HoroPoint&) const = default;
};

/// Hyperbolic distance in the space of curvature -sigma^2, sigma = ln p.
///
/// Evaluated as d = (2/sigma) asinh(s) with
///   s^2 = sinh^2(sigma dt / 2) + (sigma^2 / 4) e^{sigma (t + t')} |x - x'|^2,
/// which equals the arccosh form but stays accurate for nearby points.
/// Large arguments are handled in log space; Overflow is thrown only if the
/// distance itself is not representable.
double hyp_distance(const Params& P, const HoroPoint& z, const HoroPoint& w);

/// Same as hyp_distance, given |x - x'|^2 precomputed.
double hyp_distance_from_parts(double sigma, double t1, double t2, double dx_sq);

/// Intrinsic distance on the horosphere of level k: p^k |x - x'|.
double horo_distance(const Params& P, int k, std::span<const double> x, std::span<const double> y);

/// Vertical shift of z to level k'.
HoroPoint project(const HoroPoint& z, double level);

/// Batch distances over pairs, the |x - x'|^2 part through the vector kernels.
std::vector<double> hyp_distances(const Params& P, std::span<const HoroPoint> a,
                                  std::span<const HoroPoint> b);

}  // namespace treebed
