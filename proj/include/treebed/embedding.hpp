#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treebed/hyperbolic.hpp"
#include "treebed/tree.hpp"

namespace treebed {

/// How the level of the image cube is chosen.
enum class LevelPolicy {
    Rounded,   ///< floor(t + 1/2): the cube at the nearest integer level
    FlatZero,  ///< always level 0; a deliberately broken map for negative controls
};

/// f(z) = (f_c(z))_c, one tree vertex per color.
struct EmbeddedPoint {
    std::vector<CubeId> images;
    HoroPoint source;
};

/// floor(t + 1/2), throwing Overflow outside the int range.
int rounded_level(double t);

CubeId embed_color(const Params& P, const HoroPoint& z, int c,
                   LevelPolicy policy = LevelPolicy::Rounded);

EmbeddedPoint embed(const Params& P, const HoroPoint& z,
                    LevelPolicy policy = LevelPolicy::Rounded);

enum class ProductNorm { L1, L2, Linf };

/// Combines per-color tree distances.
double combine_norm(std::span<const std::int64_t> per_color, ProductNorm norm);

struct ProductDistance {
    double value = 0.0;
    std::vector<std::int64_t> per_color;
};

ProductDistance product_distance(const Params& P, const EmbeddedPoint& a, const EmbeddedPoint& b,
                                 ProductNorm norm = ProductNorm::L1,
                                 int scan_cap = kDefaultScanCap);

}  // namespace treebed
