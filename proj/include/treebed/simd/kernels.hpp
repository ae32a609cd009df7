#pragma once

// Data-parallel kernels used by the distortion pipeline. Each kernel has a
// scalar reference and, on x86-64, an AVX2 variant selected at runtime.
// Variants agree bit for bit: lanes follow the scalar evaluation order and
// nothing is contracted into FMAs.

#include <cstddef>
#include <span>
#include <string_view>

namespace treebed::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by this build and CPU. TREEBED_SIMD=scalar forces the
/// reference path.
Isa detected_isa();
Isa active_isa();
/// Override dispatch (tests). Throws std::invalid_argument if unsupported.
void set_active_isa(Isa isa);
bool isa_supported(Isa isa);

/// Slope needed for one additive constant m over the fitting set:
///   max_i max((tree_i - m) / hyp_i, (hyp_i - m) / tree_i)
/// over samples with hyp_i >= min_hyp and hyp_i > 0. A zero tree distance with
/// hyp_i > m makes m infeasible (+inf). Returns -inf if nothing is eligible.
double slope_bound(std::span<const double> hyp, std::span<const double> tree, double m,
                   double min_hyp);

/// Number of eligible samples that need a slope above l for constant m,
/// using exactly the ratios of slope_bound.
std::size_t count_violations(std::span<const double> hyp, std::span<const double> tree,
                             double l, double m, double min_hyp);

/// out[i] = sum_ax (a[ax*count+i] - b[ax*count+i])^2, axis-major inputs,
/// count = out.size().
void squared_distances(std::span<const double> a, std::span<const double> b, std::size_t dim,
                       std::span<double> out);

namespace scalar {
double slope_bound(const double* hyp, const double* tree, std::size_t count, double m,
                   double min_hyp);
std::size_t count_violations(const double* hyp, const double* tree, std::size_t count, double l,
                             double m, double min_hyp);
void squared_distances(const double* a, const double* b, std::size_t dim, std::size_t count,
                       double* out);
}  // namespace scalar

#if defined(TREEBED_WITH_AVX2)
namespace avx2 {
double slope_bound(const double* hyp, const double* tree, std::size_t count, double m,
                   double min_hyp);
std::size_t count_violations(const double* hyp, const double* tree, std::size_t count, double l,
                             double m, double min_hyp);
void squared_distances(const double* a, const double* b, std::size_t dim, std::size_t count,
                       double* out);
}  // namespace avx2
#endif

}  // namespace treebed::simd
