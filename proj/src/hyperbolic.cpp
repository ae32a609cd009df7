#include "treebed/hyperbolic.hpp"

#include <cmath>
#include <limits>

#include "treebed/simd/kernels.hpp"

namespace treebed {

namespace {

void check_point(const Params& P, const HoroPoint& z) {
    if (z.x.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), z.x.size());
    if (!std::isfinite(z.t)) throw Overflow("non-finite horospherical height");
    for (double v : z.x)
        if (!std::isfinite(v)) throw Overflow("non-finite horosphere coordinate");
}

// log(sinh(u)) for u > 0.
double log_sinh(double u) {
    if (u < 20.0) return std::log(std::sinh(u));
    return u - std::log(2.0) + std::log1p(-std::exp(-2.0 * u));
}

}  // namespace

double hyp_distance_from_parts(double sigma, double t1, double t2, double dx_sq) {
    const double half_dt = 0.5 * sigma * std::fabs(t1 - t2);
    const double half_sum = 0.5 * sigma * (t1 + t2);
    const double vertical = std::sinh(half_dt);
    const double horizontal = 0.5 * sigma * std::exp(half_sum) * std::sqrt(dx_sq);
    if (std::isfinite(vertical) && std::isfinite(horizontal)) {
        const double s = std::hypot(vertical, horizontal);
        if (std::isfinite(s)) return 2.0 / sigma * std::asinh(s);
    }

    // log s = 0.5 * log(vertical^2 + horizontal^2), assembled from the logs.
    const double inf = -std::numeric_limits<double>::infinity();
    const double log_v = half_dt > 0 ? log_sinh(half_dt) : inf;
    const double log_h =
        dx_sq > 0 ? std::log(0.5 * sigma) + half_sum + 0.5 * std::log(dx_sq) : inf;
    const double hi = std::max(log_v, log_h);
    const double lo = std::min(log_v, log_h);
    const double log_s = hi + 0.5 * std::log1p(std::exp(2.0 * (lo - hi)));
    // asinh(s) = log(2s) + O(1/s^2) and s > 1e150 here.
    const double d = 2.0 / sigma * (std::log(2.0) + log_s);
    if (!std::isfinite(d)) throw Overflow("hyperbolic distance is not representable");
    return d;
}

double hyp_distance(const Params& P, const HoroPoint& z, const HoroPoint& w) {
    check_point(P, z);
    check_point(P, w);
    double dx_sq = 0.0;
    for (std::size_t i = 0; i < z.x.size(); ++i) {
        const double d = z.x[i] - w.x[i];
        dx_sq += d * d;
    }
    return hyp_distance_from_parts(P.sigma(), z.t, w.t, dx_sq);
}

double horo_distance(const Params& P, int k, std::span<const double> x, std::span<const double> y) {
    if (x.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), x.size());
    if (y.size() != x.size()) throw DimensionMismatch(x.size(), y.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sq += d * d;
    }
    return std::pow(static_cast<double>(P.p()), k) * std::sqrt(sq);
}

HoroPoint project(const HoroPoint& z, double level) { return HoroPoint{level, z.x}; }

std::vector<double> hyp_distances(const Params& P, std::span<const HoroPoint> a,
                                  std::span<const HoroPoint> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    const std::size_t count = a.size();
    const std::size_t n = static_cast<std::size_t>(P.n());

    // Axis-major layout for the kernel.
    std::vector<double> xa(n * count), xb(n * count);
    for (std::size_t i = 0; i < count; ++i) {
        check_point(P, a[i]);
        check_point(P, b[i]);
        for (std::size_t ax = 0; ax < n; ++ax) {
            xa[ax * count + i] = a[i].x[ax];
            xb[ax * count + i] = b[i].x[ax];
        }
    }
    std::vector<double> dx_sq(count);
    simd::squared_distances(xa, xb, n, dx_sq);

    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = hyp_distance_from_parts(P.sigma(), a[i].t, b[i].t, dx_sq[i]);
    return out;
}

}  // namespace treebed
