#include "treebed/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "treebed/simd/kernels.hpp"

namespace treebed {

std::string to_string(SampleStrategy s) {
    switch (s) {
        case SampleStrategy::Uniform: return "uniform";
        case SampleStrategy::SameHorosphere: return "same-horosphere";
        case SampleStrategy::Vertical: return "vertical";
        case SampleStrategy::NearPairs: return "near-pairs";
    }
    return "?";
}

SampleStrategy parse_strategy(const std::string& name) {
    if (name == "uniform") return SampleStrategy::Uniform;
    if (name == "same-horosphere") return SampleStrategy::SameHorosphere;
    if (name == "vertical") return SampleStrategy::Vertical;
    if (name == "near-pairs") return SampleStrategy::NearPairs;
    throw std::invalid_argument("unknown sampling strategy '" + name + "'");
}

void SamplePlan::validate() const {
    if (!(region.t_min <= region.t_max)) throw std::invalid_argument("t_min > t_max");
    if (!(region.x_radius > 0) || !std::isfinite(region.x_radius))
        throw std::invalid_argument("x_radius must be positive");
    if (count < 1) throw std::invalid_argument("sample count must be at least 1");
    if (strategy == SampleStrategy::Vertical &&
        std::ceil(region.t_min) > std::floor(region.t_max))
        throw std::invalid_argument("vertical sampling needs an integer height in the region");
}

SampleRegion default_region(const Params& P) {
    return SampleRegion{-4.0, 4.0, std::pow(static_cast<double>(P.p()), 4)};
}

namespace {

constexpr std::size_t kSampleChunk = 1024;
constexpr std::size_t kEvalChunk = 64;

class ChunkRng {
public:
    ChunkRng(std::uint64_t seed, std::uint64_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk),
                          static_cast<std::uint32_t>(chunk >> 32)};
        engine_.seed(seq);
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

std::vector<double> random_x(ChunkRng& rng, int n, double radius) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform(-radius, radius);
    return x;
}

PointPair draw_pair(const Params& P, const SamplePlan& plan, ChunkRng& rng) {
    const auto& r = plan.region;
    const int n = P.n();
    switch (plan.strategy) {
        case SampleStrategy::Uniform:
            return {HoroPoint{rng.uniform(r.t_min, r.t_max), random_x(rng, n, r.x_radius)},
                    HoroPoint{rng.uniform(r.t_min, r.t_max), random_x(rng, n, r.x_radius)}};
        case SampleStrategy::SameHorosphere: {
            const double t = rng.uniform(r.t_min, r.t_max);
            return {HoroPoint{t, random_x(rng, n, r.x_radius)},
                    HoroPoint{t, random_x(rng, n, r.x_radius)}};
        }
        case SampleStrategy::Vertical: {
            const auto lo = static_cast<std::int64_t>(std::ceil(r.t_min));
            const auto hi = static_cast<std::int64_t>(std::floor(r.t_max));
            auto x = random_x(rng, n, r.x_radius);
            const auto k1 = static_cast<double>(rng.integer(lo, hi));
            const auto k2 = static_cast<double>(rng.integer(lo, hi));
            return {HoroPoint{k1, x}, HoroPoint{k2, x}};
        }
        case SampleStrategy::NearPairs: {
            HoroPoint a{rng.uniform(r.t_min, r.t_max), random_x(rng, n, r.x_radius)};
            // A vertical leg of length <= 1 then a horospherical leg of
            // length <= 1, so d_hyp <= 2.
            const double t2 = a.t + rng.uniform(-1.0, 1.0);
            std::vector<double> dir;
            double norm = 0.0;
            do {
                dir = random_x(rng, n, 1.0);
                norm = 0.0;
                for (double v : dir) norm += v * v;
                norm = std::sqrt(norm);
            } while (norm < 1e-3);
            const double arc = rng.unit();
            const double euclid = arc * std::pow(static_cast<double>(P.p()), -t2) / norm;
            HoroPoint b{t2, a.x};
            for (std::size_t i = 0; i < b.x.size(); ++i) b.x[i] += euclid * dir[i];
            return {std::move(a), std::move(b)};
        }
    }
    throw std::logic_error("unhandled strategy");
}

// Runs body(chunk_begin, chunk_end) over [0, count) on `threads` workers.
// The first failing chunk in index order decides the exception.
template <class Body>
void parallel_chunks(std::size_t count, std::size_t chunk, unsigned threads, Body body) {
    const std::size_t chunks = (count + chunk - 1) / chunk;
    std::vector<std::exception_ptr> errors(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t ci = next++; ci < chunks; ci = next++) {
            try {
                body(ci * chunk, std::min(count, (ci + 1) * chunk));
            } catch (...) {
                errors[ci] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string describe(const HoroPoint& z) {
    std::string s = "(" + std::to_string(z.t);
    for (double v : z.x) s += ", " + std::to_string(v);
    return s + ")";
}

}  // namespace

std::vector<PointPair> sample_pairs(const Params& P, const SamplePlan& plan) {
    plan.validate();
    std::vector<PointPair> pairs;
    pairs.reserve(plan.count);
    for (std::size_t begin = 0, chunk = 0; begin < plan.count; begin += kSampleChunk, ++chunk) {
        ChunkRng rng(plan.seed, chunk);
        const std::size_t end = std::min(plan.count, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) pairs.push_back(draw_pair(P, plan, rng));
    }
    return pairs;
}

DistortionReport evaluate_pairs(const Params& P, std::span<const PointPair> pairs,
                                const EvalOptions& options) {
    if (pairs.empty()) throw std::invalid_argument("no pairs to evaluate");
    const auto start = std::chrono::steady_clock::now();

    std::vector<HoroPoint> first, second;
    first.reserve(pairs.size());
    second.reserve(pairs.size());
    for (const auto& pr : pairs) {
        first.push_back(pr.a);
        second.push_back(pr.b);
    }
    const std::vector<double> hyp = hyp_distances(P, first, second);

    DistortionReport report;
    report.samples.resize(pairs.size());
    parallel_chunks(pairs.size(), kEvalChunk, options.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            try {
                const EmbeddedPoint ea = embed(P, pairs[i].a, options.policy);
                const EmbeddedPoint eb = embed(P, pairs[i].b, options.policy);
                ProductDistance d = product_distance(P, ea, eb, options.norm, options.scan_cap);
                report.samples[i] = DistortionSample{hyp[i], d.value, std::move(d.per_color)};
            } catch (const ScanExhausted& ex) {
                throw ScanExhausted(ex.k_reached, "pair " + std::to_string(i) + ": " +
                                                      describe(pairs[i].a) + " - " +
                                                      describe(pairs[i].b));
            }
        }
    });
    for (const auto& s : report.samples)
        if (s.d_hyp < kMinFitDistance) ++report.excluded;

    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<double> integer_m_grid(int m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be non-negative");
    std::vector<double> grid;
    for (int m = 0; m <= m_max; ++m) grid.push_back(m);
    return grid;
}

std::vector<double> default_m_grid() { return integer_m_grid(10); }

SeparationCheck separation_check(const Params& P, const SeparationPlan& plan) {
    if (plan.k_min >= plan.k_max) throw std::invalid_argument("separation check needs k_min < k_max");
    std::int64_t bound = plan.gamma_bound;
    if (bound <= 0) bound = static_cast<std::int64_t>(P.p()) * P.p() * P.p();

    SeparationCheck out;
    const auto near_count = static_cast<std::size_t>(plan.near_fraction * static_cast<double>(plan.count));
    for (std::size_t begin = 0, chunk = 0; begin < plan.count; begin += kSampleChunk, ++chunk) {
        ChunkRng rng(plan.seed, chunk);
        const std::size_t end = std::min(plan.count, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) {
            const int c = static_cast<int>(rng.integer(0, P.colors() - 1));
            int k1 = static_cast<int>(rng.integer(plan.k_min, plan.k_max));
            int k2 = static_cast<int>(rng.integer(plan.k_min, plan.k_max - 1));
            if (k2 >= k1) ++k2;
            const int low_k = std::min(k1, k2);
            const int high_k = std::max(k1, k2);

            CubeId high{c, high_k, std::vector<std::int64_t>(static_cast<std::size_t>(P.n()))};
            for (auto& g : high.gamma) g = rng.integer(-bound, bound);
            CubeId low;
            if (i < near_count) {
                low = nearest_in_level(P, c, low_k, realize(P, high).center());
            } else {
                low = CubeId{c, low_k, std::vector<std::int64_t>(high.gamma.size())};
                for (auto& g : low.gamma) g = rng.integer(-bound, bound);
            }

            const SeparationVerdict v = separation_verdict(P, low, high);
            ++out.checked;
            switch (v.kind) {
                case SeparationVerdict::Kind::DisjointFar: ++out.disjoint_far; break;
                case SeparationVerdict::Kind::NestedDeep: ++out.nested_deep; break;
                case SeparationVerdict::Kind::Violation:
                    ++out.violations;
                    if (out.witnesses.size() < 16)
                        out.witnesses.push_back(to_string(low) + " vs " + to_string(high) +
                                                ": witness^2 = " + to_string(v.witness_sq) +
                                                " < " + to_string(v.bound_sq));
                    break;
            }
        }
    }
    return out;
}

namespace {

void split(const DistortionReport& report, std::vector<double>& hyp, std::vector<double>& tree) {
    hyp.clear();
    tree.clear();
    hyp.reserve(report.samples.size());
    tree.reserve(report.samples.size());
    for (const auto& s : report.samples) {
        hyp.push_back(s.d_hyp);
        tree.push_back(s.d_tree);
    }
}

}  // namespace

DistortionReport fit_qi_constants(DistortionReport report, std::span<const double> m_grid) {
    if (report.samples.empty()) throw DegenerateSample("no samples to fit");
    std::vector<double> grid(m_grid.begin(), m_grid.end());
    if (grid.empty()) grid = default_m_grid();

    std::vector<double> hyp, tree;
    split(report, hyp, tree);
    const bool any_eligible = std::any_of(hyp.begin(), hyp.end(), [](double d) {
        return d >= kMinFitDistance;
    });
    if (!any_eligible)
        throw DegenerateSample("every pair is closer than " + std::to_string(kMinFitDistance));

    QiFit best{std::numeric_limits<double>::infinity(), grid.front()};
    bool have = false;
    for (double m : grid) {
        const double l = std::max(1.0, simd::slope_bound(hyp, tree, m, kMinFitDistance));
        if (!have || l < best.l || (l == best.l && m < best.m)) {
            best = QiFit{l, m};
            have = true;
        }
    }
    report.fit = best;
    report.excluded = static_cast<std::size_t>(
        std::count_if(hyp.begin(), hyp.end(), [](double d) { return d < kMinFitDistance; }));
    report.violations = simd::count_violations(hyp, tree, best.l, best.m, kMinFitDistance);
    return report;
}

std::size_t count_violations(const DistortionReport& report, const QiFit& fit) {
    std::vector<double> hyp, tree;
    split(report, hyp, tree);
    return simd::count_violations(hyp, tree, fit.l, fit.m, kMinFitDistance);
}

CheckReport vertical_bound_check(const Params& P, std::span<const PointPair> pairs,
                                 const DistortionReport& report) {
    if (pairs.size() != report.samples.size())
        throw DimensionMismatch(pairs.size(), report.samples.size());
    CheckReport out;
    const std::int64_t colors = P.colors();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pr = pairs[i];
        if (pr.a.x != pr.b.x) throw std::invalid_argument("vertical check needs equal x");
        const std::int64_t dk = std::llabs(static_cast<long long>(rounded_level(pr.a.t)) -
                                           rounded_level(pr.b.t));
        const auto& pc = report.samples[i].per_color;
        const std::int64_t best = pc.empty() ? 0 : *std::max_element(pc.begin(), pc.end());
        ++out.checked;
        // best >= (dk + 1) / |C| - 1, cleared of denominators.
        if (colors * best < dk + 1 - colors) {
            ++out.failures;
            if (out.witnesses.size() < 16)
                out.witnesses.push_back(describe(pr.a) + " - " + describe(pr.b) + ": max " +
                                        std::to_string(best) + " for dk " + std::to_string(dk));
        }
    }
    return out;
}

CheckReport vertical_bound_check(const Params& P, const SamplePlan& plan,
                                 const EvalOptions& options) {
    SamplePlan vertical = plan;
    vertical.strategy = SampleStrategy::Vertical;
    const auto pairs = sample_pairs(P, vertical);
    const auto report = evaluate_pairs(P, pairs, options);
    return vertical_bound_check(P, pairs, report);
}

CheckReport vertical_bound_check(const Params& P, std::size_t count, std::uint64_t seed,
                                 const EvalOptions& options) {
    SamplePlan plan;
    plan.region = default_region(P);
    plan.count = count;
    plan.seed = seed;
    return vertical_bound_check(P, plan, options);
}

SampleRegion scale_region(const SampleRegion& region, double s) {
    return SampleRegion{region.t_min * s, region.t_max * s, region.x_radius * s};
}

TrendReport stability_probe(const Params& P, const SamplePlan& base_plan,
                            std::span<const double> scales, const EvalOptions& options,
                            std::span<const double> m_grid) {
    if (scales.empty()) throw std::invalid_argument("no scales given");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] > scales[i - 1])) throw std::invalid_argument("scales must increase");

    TrendReport trend;
    for (double s : scales) {
        SamplePlan plan = base_plan;
        plan.region = scale_region(base_plan.region, s);
        const auto pairs = sample_pairs(P, plan);
        const auto fitted = fit_qi_constants(evaluate_pairs(P, pairs, options), m_grid);
        trend.scales.push_back(s);
        trend.fits.push_back(*fitted.fit);
    }
    for (std::size_t i = 1; i < trend.fits.size(); ++i) {
        const double prev = trend.fits[i - 1].l;
        const double cur = trend.fits[i].l;
        double rel = 0.0;
        if (std::isinf(prev) && std::isinf(cur))
            rel = 0.0;
        else
            rel = (cur - prev) / prev;
        trend.max_relative_increase = std::max(trend.max_relative_increase, rel);
        trend.max_relative_change = std::max(trend.max_relative_change, std::fabs(rel));
    }
    return trend;
}

}  // namespace treebed
