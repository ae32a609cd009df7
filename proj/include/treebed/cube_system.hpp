#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treebed/core.hpp"

namespace treebed {

/// Vertex of the colored tree T_c: the cube of color c at level k indexed by
/// the lattice point gamma. Level-k cubes are H^{-k} of level-0 cubes, so one
/// lattice index per level suffices.
struct CubeId {
    int c = 0;
    int k = 0;
    std::vector<std::int64_t> gamma;

    auto operator<=>(const CubeId&) const = default;
    bool operator==(const CubeId&) const = default;
};

std::string to_string(const CubeId& id);

/// Parses "c,k,g1[,g2,...]".
CubeId parse_cube_id(const std::string& text);

struct CubeIdHash {
    std::size_t operator()(const CubeId& id) const noexcept;
};

/// Throws DimensionMismatch or std::invalid_argument for a malformed id.
void check_cube_id(const Params& P, const CubeId& id);

/// Exact cube of `id`: p^{-k} (gamma + c nu + A - eta0) + eta0 with
/// A = [1/p, 1 - 1/p]^n.
RationalBox realize(const Params& P, const CubeId& id);

/// Coordinate of x in the level-k cell lattice of color c: the cube with
/// index g occupies [g + 1/p, g + 1 - 1/p] on each axis.
Rational cell_coordinate(const Params& P, int c, int k, const Rational& x);

/// The cube of (c, k) whose closed box contains x, or nullopt if x is in the
/// gap.
std::optional<CubeId> locate(const Params& P, int c, int k, const RationalVec& x);

/// A cube of (c, k) nearest to x in the Euclidean metric, computed exactly
/// axis by axis. A point midway between two cubes on some axis takes the
/// index of smaller magnitude on that axis.
CubeId nearest_in_level(const Params& P, int c, int k, const RationalVec& x);
CubeId nearest_in_level(const Params& P, int c, int k, std::span<const double> x);

struct SeparationVerdict {
    enum class Kind { DisjointFar, NestedDeep, Violation };

    Kind kind = Kind::Violation;
    /// Square of the achieved gap (disjoint) or boundary margin (nested).
    /// Partial overlaps carry 0.
    Rational witness_sq;
    /// Square of the required distance lambda^{k+1}, k the higher level.
    Rational bound_sq;

    /// The witness itself when it is rational.
    std::optional<Rational> witness() const;
};

std::string to_string(SeparationVerdict::Kind kind);

/// Classifies a same-color pair of cubes with low.k < high.k against the
/// separation bound lambda^{high.k + 1}.
SeparationVerdict separation_verdict(const Params& P, const CubeId& low, const CubeId& high);

struct CoveringReport {
    int n = 0;
    int p = 0;
    Rational grid_step;
    std::uint64_t cells_total = 0;
    std::uint64_t cells_uncovered = 0;
    /// Centers of uncovered cells on the unit torus, first few only.
    std::vector<RationalVec> witnesses;

    bool covered() const { return cells_uncovered == 0; }
};

struct CoveringOptions {
    /// Colors taken into account; empty means all of them.
    std::vector<int> colors;
    std::uint64_t cell_budget = 1'000'000;
    std::size_t max_witnesses = 16;
};

/// Exact check that the level-0 patterns of all colors cover R^n. Every
/// level-0 face lies on the grid of step 1/lcm(p, n+1), so a grid cell is
/// covered iff its center is.
CoveringReport verify_covering_level0(const Params& P, const CoveringOptions& options = {});

}  // namespace treebed
