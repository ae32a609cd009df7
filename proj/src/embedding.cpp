#include "treebed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace treebed {

int rounded_level(double t) {
    const double k = std::floor(t + 0.5);
    if (!std::isfinite(k) || k > std::numeric_limits<int>::max() / 2 ||
        k < std::numeric_limits<int>::min() / 2)
        throw Overflow("horospherical height out of range");
    return static_cast<int>(k);
}

CubeId embed_color(const Params& P, const HoroPoint& z, int c, LevelPolicy policy) {
    if (z.x.size() != static_cast<std::size_t>(P.n()))
        throw DimensionMismatch(static_cast<std::size_t>(P.n()), z.x.size());
    const int k = policy == LevelPolicy::Rounded ? rounded_level(z.t) : 0;
    return nearest_in_level(P, c, k, z.x);
}

EmbeddedPoint embed(const Params& P, const HoroPoint& z, LevelPolicy policy) {
    EmbeddedPoint e;
    e.source = z;
    e.images.reserve(static_cast<std::size_t>(P.colors()));
    for (int c = 0; c < P.colors(); ++c) e.images.push_back(embed_color(P, z, c, policy));
    return e;
}

double combine_norm(std::span<const std::int64_t> per_color, ProductNorm norm) {
    double out = 0.0;
    switch (norm) {
        case ProductNorm::L1:
            for (auto d : per_color) out += static_cast<double>(d);
            return out;
        case ProductNorm::L2:
            for (auto d : per_color) out += static_cast<double>(d) * static_cast<double>(d);
            return std::sqrt(out);
        case ProductNorm::Linf:
            for (auto d : per_color) out = std::max(out, static_cast<double>(d));
            return out;
    }
    return out;
}

ProductDistance product_distance(const Params& P, const EmbeddedPoint& a, const EmbeddedPoint& b,
                                 ProductNorm norm, int scan_cap) {
    if (a.images.size() != b.images.size())
        throw DimensionMismatch(a.images.size(), b.images.size());
    ProductDistance out;
    out.per_color.reserve(a.images.size());
    for (std::size_t c = 0; c < a.images.size(); ++c)
        out.per_color.push_back(tree_distance(P, a.images[c], b.images[c], scan_cap));
    out.value = combine_norm(out.per_color, norm);
    return out;
}

}  // namespace treebed
