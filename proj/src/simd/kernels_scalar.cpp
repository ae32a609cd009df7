#include <cstddef>
#include <limits>

#include "treebed/simd/kernels.hpp"

namespace treebed::simd::scalar {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline double reverse_ratio(double hyp, double tree, double m) {
    const double num = hyp - m;
    if (tree > 0.0) return num / tree;
    return num > 0.0 ? kPosInf : kNegInf;
}
}  // namespace

double slope_bound(const double* hyp, const double* tree, std::size_t count, double m,
                   double min_hyp) {
    double best = kNegInf;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(hyp[i] >= min_hyp && hyp[i] > 0.0)) continue;
        const double forward = (tree[i] - m) / hyp[i];
        const double backward = reverse_ratio(hyp[i], tree[i], m);
        if (forward > best) best = forward;
        if (backward > best) best = backward;
    }
    return best;
}

std::size_t count_violations(const double* hyp, const double* tree, std::size_t count, double l,
                             double m, double min_hyp) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(hyp[i] >= min_hyp && hyp[i] > 0.0)) continue;
        const double forward = (tree[i] - m) / hyp[i];
        const double backward = reverse_ratio(hyp[i], tree[i], m);
        if (forward > l || backward > l) ++bad;
    }
    return bad;
}

void squared_distances(const double* a, const double* b, std::size_t dim, std::size_t count,
                       double* out) {
    for (std::size_t i = 0; i < count; ++i) out[i] = 0.0;
    for (std::size_t ax = 0; ax < dim; ++ax) {
        const double* pa = a + ax * count;
        const double* pb = b + ax * count;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = pa[i] - pb[i];
            out[i] += d * d;
        }
    }
}

}  // namespace treebed::simd::scalar
