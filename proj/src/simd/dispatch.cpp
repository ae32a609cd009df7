#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "treebed/error.hpp"
#include "treebed/simd/kernels.hpp"

namespace treebed::simd {

namespace {

bool cpu_has_avx2() {
#if defined(TREEBED_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("TREEBED_SIMD")) {
        if (std::string(env) == "scalar") return Isa::Scalar;
    }
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    if (isa == Isa::Scalar) return true;
    return cpu_has_avx2();
}

Isa detected_isa() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa))
        throw std::invalid_argument("ISA not supported here: " + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

double slope_bound(std::span<const double> hyp, std::span<const double> tree, double m,
                   double min_hyp) {
    if (hyp.size() != tree.size()) throw DimensionMismatch(hyp.size(), tree.size());
#if defined(TREEBED_WITH_AVX2)
    if (active_isa() == Isa::Avx2)
        return avx2::slope_bound(hyp.data(), tree.data(), hyp.size(), m, min_hyp);
#endif
    return scalar::slope_bound(hyp.data(), tree.data(), hyp.size(), m, min_hyp);
}

std::size_t count_violations(std::span<const double> hyp, std::span<const double> tree,
                             double l, double m, double min_hyp) {
    if (hyp.size() != tree.size()) throw DimensionMismatch(hyp.size(), tree.size());
#if defined(TREEBED_WITH_AVX2)
    if (active_isa() == Isa::Avx2)
        return avx2::count_violations(hyp.data(), tree.data(), hyp.size(), l, m, min_hyp);
#endif
    return scalar::count_violations(hyp.data(), tree.data(), hyp.size(), l, m, min_hyp);
}

void squared_distances(std::span<const double> a, std::span<const double> b, std::size_t dim,
                       std::span<double> out) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    if (a.size() != dim * out.size()) throw DimensionMismatch(dim * out.size(), a.size());
#if defined(TREEBED_WITH_AVX2)
    if (active_isa() == Isa::Avx2) {
        avx2::squared_distances(a.data(), b.data(), dim, out.size(), out.data());
        return;
    }
#endif
    scalar::squared_distances(a.data(), b.data(), dim, out.size(), out.data());
}

}  // namespace treebed::simd
