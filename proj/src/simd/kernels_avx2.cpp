#include <immintrin.h>

#include <cstddef>
#include <limits>

#include "treebed/simd/kernels.hpp"

namespace treebed::simd::avx2 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Per-lane forward and backward ratios, with ineligible lanes forced to -inf.
inline void ratios(__m256d h, __m256d t, __m256d m, __m256d min_hyp, __m256d& forward,
                   __m256d& backward) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d neg_inf = _mm256_set1_pd(kNegInf);
    const __m256d pos_inf = _mm256_set1_pd(kPosInf);

    const __m256d eligible = _mm256_and_pd(_mm256_cmp_pd(h, min_hyp, _CMP_GE_OQ),
                                           _mm256_cmp_pd(h, zero, _CMP_GT_OQ));
    const __m256d safe_h = _mm256_blendv_pd(_mm256_set1_pd(1.0), h, eligible);
    forward = _mm256_div_pd(_mm256_sub_pd(t, m), safe_h);

    const __m256d num = _mm256_sub_pd(h, m);
    const __m256d tree_pos = _mm256_cmp_pd(t, zero, _CMP_GT_OQ);
    const __m256d safe_t = _mm256_blendv_pd(_mm256_set1_pd(1.0), t, tree_pos);
    const __m256d divided = _mm256_div_pd(num, safe_t);
    const __m256d num_pos = _mm256_cmp_pd(num, zero, _CMP_GT_OQ);
    const __m256d degenerate = _mm256_blendv_pd(neg_inf, pos_inf, num_pos);
    backward = _mm256_blendv_pd(degenerate, divided, tree_pos);

    forward = _mm256_blendv_pd(neg_inf, forward, eligible);
    backward = _mm256_blendv_pd(neg_inf, backward, eligible);
}

inline double reverse_ratio(double hyp, double tree, double m) {
    const double num = hyp - m;
    if (tree > 0.0) return num / tree;
    return num > 0.0 ? kPosInf : kNegInf;
}

}  // namespace

double slope_bound(const double* hyp, const double* tree, std::size_t count, double m,
                   double min_hyp) {
    const __m256d vm = _mm256_set1_pd(m);
    const __m256d vmin = _mm256_set1_pd(min_hyp);
    __m256d best = _mm256_set1_pd(kNegInf);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d forward, backward;
        ratios(_mm256_loadu_pd(hyp + i), _mm256_loadu_pd(tree + i), vm, vmin, forward, backward);
        best = _mm256_max_pd(best, _mm256_max_pd(forward, backward));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double out = kNegInf;
    for (double v : lanes)
        if (v > out) out = v;
    for (; i < count; ++i) {
        if (!(hyp[i] >= min_hyp && hyp[i] > 0.0)) continue;
        const double forward = (tree[i] - m) / hyp[i];
        const double backward = reverse_ratio(hyp[i], tree[i], m);
        if (forward > out) out = forward;
        if (backward > out) out = backward;
    }
    return out;
}

std::size_t count_violations(const double* hyp, const double* tree, std::size_t count, double l,
                             double m, double min_hyp) {
    const __m256d vm = _mm256_set1_pd(m);
    const __m256d vl = _mm256_set1_pd(l);
    const __m256d vmin = _mm256_set1_pd(min_hyp);
    std::size_t bad = 0;
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d forward, backward;
        ratios(_mm256_loadu_pd(hyp + i), _mm256_loadu_pd(tree + i), vm, vmin, forward, backward);
        const __m256d over = _mm256_or_pd(_mm256_cmp_pd(forward, vl, _CMP_GT_OQ),
                                          _mm256_cmp_pd(backward, vl, _CMP_GT_OQ));
        bad += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(over)));
    }
    for (; i < count; ++i) {
        if (!(hyp[i] >= min_hyp && hyp[i] > 0.0)) continue;
        const double forward = (tree[i] - m) / hyp[i];
        const double backward = reverse_ratio(hyp[i], tree[i], m);
        if (forward > l || backward > l) ++bad;
    }
    return bad;
}

void squared_distances(const double* a, const double* b, std::size_t dim, std::size_t count,
                       double* out) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t ax = 0; ax < dim; ++ax) {
            const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + ax * count + i),
                                            _mm256_loadu_pd(b + ax * count + i));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t ax = 0; ax < dim; ++ax) {
            const double d = a[ax * count + i] - b[ax * count + i];
            acc += d * d;
        }
        out[i] = acc;
    }
}

}  // namespace treebed::simd::avx2
