#include <doctest.h>

#include <treebed/simd/kernels.hpp>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

using namespace treebed::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct Data {
    std::vector<double> hyp, tree;
};

// distances with a share of zeros, tiny values and exact ties
Data make_data(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0, 40);
    std::uniform_int_distribution<int> kind(0, 9), t(0, 50);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = kind(rng);
        d.hyp.push_back(k == 0 ? 0.0 : k == 1 ? 0.05 : u(rng));
        d.tree.push_back(k == 2 ? 0.0 : double(t(rng)));
    }
    return d;
}

// independent formulation of the slope bound
double slope_reference(const Data& d, double m, double min_hyp) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.hyp.size(); ++i) {
        const double h = d.hyp[i], t = d.tree[i];
        if (!(h >= min_hyp) || !(h > 0)) continue;
        best = std::max(best, (t - m) / h);
        double r;
        if (t > 0)
            r = (h - m) / t;
        else
            r = (h - m) > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
        best = std::max(best, r);
    }
    return best;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference against an independent formulation") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {0, 1, 5, 64, 333}) {
        const Data d = make_data(rng, n);
        for (double m : {0.0, 1.0, 7.5}) {
            const double ref = slope_reference(d, m, 0.1);
            const double got = scalar::slope_bound(d.hyp.data(), d.tree.data(), n, m, 0.1);
            CHECK(same_bits(ref, got));
        }
    }
}

TEST_CASE("scalar and vector variants agree bit for bit") {
    if (!isa_supported(Isa::Avx2)) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
#if defined(TREEBED_WITH_AVX2)
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n < 70; ++n) {
        const Data d = make_data(rng, n * 3 + n % 5);
        const std::size_t len = d.hyp.size();
        for (double m : {0.0, 2.0, 10.0}) {
            const double s = scalar::slope_bound(d.hyp.data(), d.tree.data(), len, m, 0.1);
            const double v = avx2::slope_bound(d.hyp.data(), d.tree.data(), len, m, 0.1);
            CHECK(same_bits(s, v));
            for (double l : {1.0, 1.3, 3.0}) {
                CHECK(scalar::count_violations(d.hyp.data(), d.tree.data(), len, l, m, 0.1) ==
                      avx2::count_violations(d.hyp.data(), d.tree.data(), len, l, m, 0.1));
            }
        }
        for (std::size_t dim : {1, 2, 3, 5}) {
            std::uniform_real_distribution<double> u(-1e3, 1e3);
            std::vector<double> a(dim * len), b(dim * len), os(len), ov(len);
            for (auto& x : a) x = u(rng);
            for (auto& x : b) x = u(rng);
            scalar::squared_distances(a.data(), b.data(), dim, len, os.data());
            avx2::squared_distances(a.data(), b.data(), dim, len, ov.data());
            for (std::size_t i = 0; i < len; ++i) CHECK(same_bits(os[i], ov[i]));
        }
    }
#endif
}

TEST_CASE("dispatch") {
    const Isa before = active_isa();
    set_active_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    const std::vector<double> hyp{1, 2, 0.01}, tree{2, 1, 5};
    CHECK(slope_bound(hyp, tree, 0, 0.1) == 2.0);
    CHECK(count_violations(hyp, tree, 1.5, 0, 0.1) == 2);
    if (isa_supported(Isa::Avx2)) {
        set_active_isa(Isa::Avx2);
        CHECK(slope_bound(hyp, tree, 0, 0.1) == 2.0);
    } else {
        CHECK_THROWS_AS(set_active_isa(Isa::Avx2), std::invalid_argument);
    }
    set_active_isa(before);
    CHECK(isa_name(Isa::Scalar) == "scalar");
    const std::vector<double> none;
    CHECK(slope_bound(none, none, 0, 0.1) == -std::numeric_limits<double>::infinity());
}

}
