#include "treebed/cube_system.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace treebed {

std::string to_string(const CubeId& id) {
    std::string s = std::to_string(id.c) + "," + std::to_string(id.k);
    for (auto g : id.gamma) s += "," + std::to_string(g);
    return s;
}

CubeId parse_cube_id(const std::string& text) {
    std::vector<std::int64_t> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad cube id '" + text + "'");
        }
        if (used != item.size()) throw std::invalid_argument("bad cube id '" + text + "'");
        parts.push_back(v);
    }
    if (parts.size() < 3) throw std::invalid_argument("cube id needs c,k,g1[,g2...]: '" + text + "'");
    CubeId id;
    id.c = static_cast<int>(parts[0]);
    id.k = static_cast<int>(parts[1]);
    id.gamma.assign(parts.begin() + 2, parts.end());
    return id;
}

std::size_t CubeIdHash::operator()(const CubeId& id) const noexcept {
    std::size_t h = std::hash<int>{}(id.c) * 1000003u ^ std::hash<int>{}(id.k);
    for (auto g : id.gamma) h = h * 1000003u ^ std::hash<std::int64_t>{}(g);
    return h;
}

void check_cube_id(const Params& P, const CubeId& id) {
    if (id.gamma.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), id.gamma.size());
    if (id.c < 0 || id.c >= P.colors())
        throw std::invalid_argument("color out of range: " + std::to_string(id.c));
}

RationalBox realize(const Params& P, const CubeId& id) {
    check_cube_id(P, id);
    const Rational scale = pow_p(P, -id.k);
    const Rational shift = id.c * P.nu_coord() - P.eta0_coord();
    const Rational inset = P.lambda();
    RationalBox box;
    box.lo.resize(id.gamma.size());
    box.hi.resize(id.gamma.size());
    for (std::size_t i = 0; i < id.gamma.size(); ++i) {
        const Rational base = Rational(mpz_class(static_cast<long>(id.gamma[i]))) + shift;
        box.lo[i] = scale * (base + inset) + P.eta0_coord();
        box.hi[i] = scale * (base + 1 - inset) + P.eta0_coord();
    }
    return box;
}

Rational cell_coordinate(const Params& P, int c, int k, const Rational& x) {
    return pow_p(P, k) * (x - P.eta0_coord()) + P.eta0_coord() - c * P.nu_coord();
}

std::optional<CubeId> locate(const Params& P, int c, int k, const RationalVec& x) {
    if (x.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), x.size());
    if (c < 0 || c >= P.colors()) throw std::invalid_argument("color out of range");
    const Rational scale = pow_p(P, k);
    CubeId id{c, k, std::vector<std::int64_t>(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational y = scale * (x[i] - P.eta0_coord()) + P.eta0_coord() - c * P.nu_coord();
        const mpz_class g = floor_rational(y);
        const Rational frac = y - g;
        if (frac < P.lambda() || frac > 1 - P.lambda()) return std::nullopt;
        id.gamma[i] = to_int64(g);
    }
    return id;
}

CubeId nearest_in_level(const Params& P, int c, int k, const RationalVec& x) {
    if (x.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), x.size());
    if (c < 0 || c >= P.colors()) throw std::invalid_argument("color out of range");
    const Rational scale = pow_p(P, k);
    CubeId id{c, k, std::vector<std::int64_t>(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational y = scale * (x[i] - P.eta0_coord()) + P.eta0_coord() - c * P.nu_coord();
        mpz_class g = floor_rational(y);
        // frac in [0, 1). The own cube is never farther than a neighbor; the
        // only tie is frac == 0, exactly midway between cubes g-1 and g. It
        // goes to the index nearer the origin.
        const Rational frac = y - g;
        if (frac == 0 && g > 0) g -= 1;
        id.gamma[i] = to_int64(g);
    }
    return id;
}

CubeId nearest_in_level(const Params& P, int c, int k, std::span<const double> x) {
    RationalVec exact(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw Overflow("non-finite coordinate");
        exact[i] = Rational(x[i]);
    }
    return nearest_in_level(P, c, k, exact);
}

std::optional<Rational> SeparationVerdict::witness() const {
    if (mpz_perfect_square_p(witness_sq.get_num_mpz_t()) == 0 ||
        mpz_perfect_square_p(witness_sq.get_den_mpz_t()) == 0)
        return std::nullopt;
    Rational r;
    mpz_sqrt(r.get_num_mpz_t(), witness_sq.get_num_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), witness_sq.get_den_mpz_t());
    r.canonicalize();
    return r;
}

std::string to_string(SeparationVerdict::Kind kind) {
    switch (kind) {
        case SeparationVerdict::Kind::DisjointFar: return "DisjointFar";
        case SeparationVerdict::Kind::NestedDeep: return "NestedDeep";
        case SeparationVerdict::Kind::Violation: return "Violation";
    }
    return "?";
}

SeparationVerdict separation_verdict(const Params& P, const CubeId& low, const CubeId& high) {
    if (low.c != high.c) throw ColorMismatch(low.c, high.c);
    if (low.k >= high.k)
        throw LevelOrder("separation needs low.k < high.k, got " + std::to_string(low.k) +
                         " >= " + std::to_string(high.k));
    const RationalBox outer = realize(P, low);
    const RationalBox inner = realize(P, high);
    const Rational bound = pow_p(P, -(high.k + 1));

    SeparationVerdict v;
    v.bound_sq = bound * bound;
    const Rational gap_sq = box_gap_sq(outer, inner);
    if (gap_sq > 0) {
        v.witness_sq = gap_sq;
        v.kind = gap_sq >= v.bound_sq ? SeparationVerdict::Kind::DisjointFar
                                      : SeparationVerdict::Kind::Violation;
        return v;
    }
    const auto margin = boundary_margin(outer, inner);
    if (!margin) {
        v.witness_sq = 0;
        v.kind = SeparationVerdict::Kind::Violation;
        return v;
    }
    v.witness_sq = *margin * *margin;
    v.kind = *margin >= bound ? SeparationVerdict::Kind::NestedDeep
                              : SeparationVerdict::Kind::Violation;
    return v;
}

CoveringReport verify_covering_level0(const Params& P, const CoveringOptions& options) {
    const int n = P.n();
    std::vector<int> colors = options.colors;
    if (colors.empty())
        for (int c = 0; c < P.colors(); ++c) colors.push_back(c);
    for (int c : colors)
        if (c < 0 || c >= P.colors()) throw std::invalid_argument("color out of range");

    const long cells_per_axis = std::lcm(static_cast<long>(P.p()), static_cast<long>(n + 1));
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > options.cell_budget / static_cast<std::uint64_t>(cells_per_axis) + 1)
            throw ResourceLimit("covering grid exceeds the cell budget of " +
                                std::to_string(options.cell_budget));
        total *= static_cast<std::uint64_t>(cells_per_axis);
    }
    if (total > options.cell_budget)
        throw ResourceLimit("covering grid of " + std::to_string(total) +
                            " cells exceeds the budget of " + std::to_string(options.cell_budget));

    CoveringReport report;
    report.n = n;
    report.p = P.p();
    report.grid_step = make_rational(1, cells_per_axis);
    report.cells_total = total;

    std::vector<long> index(static_cast<std::size_t>(n), 0);
    RationalVec center(static_cast<std::size_t>(n));
    for (std::uint64_t cell = 0; cell < total; ++cell) {
        for (int i = 0; i < n; ++i)
            center[i] = make_rational(2 * index[i] + 1, 2 * cells_per_axis);
        bool covered = false;
        for (int c : colors) {
            if (locate(P, c, 0, center)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            ++report.cells_uncovered;
            if (report.witnesses.size() < options.max_witnesses) report.witnesses.push_back(center);
        }
        for (int i = 0; i < n; ++i) {
            if (++index[i] < cells_per_axis) break;
            index[i] = 0;
        }
    }
    return report;
}

}  // namespace treebed
