#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treebed/cube_system.hpp"

namespace treebed {

inline constexpr int kDefaultScanCap = 64;

/// Nearest containing cube: the vertex v' of greatest level k' < id.k with
/// id contained in v'. At each level the only candidate is the cube holding
/// the center of id, so the scan costs O(n) per level.
CubeId parent(const Params& P, const CubeId& id, int scan_cap = kDefaultScanCap);

struct AncestorChain {
    /// Starts at the query vertex; levels strictly decrease.
    std::vector<CubeId> vertices;
};

/// Follows parent() from id until the first vertex with level <= floor_level.
AncestorChain ancestor_chain(const Params& P, const CubeId& id, int floor_level,
                             int scan_cap = kDefaultScanCap);

struct Meet {
    CubeId vertex;      ///< lowest common ancestor
    int steps_u = 0;    ///< edges from u up to the meet
    int steps_v = 0;
};

Meet meet(const Params& P, const CubeId& u, const CubeId& v, int scan_cap = kDefaultScanCap);

/// Hop count of the path u - v in T_c.
std::int64_t tree_distance(const Params& P, const CubeId& u, const CubeId& v,
                           int scan_cap = kDefaultScanCap);

/// Finite piece of T_c: levels [k_min, k_max] and |gamma_i| <= gamma_bound.
struct TreeWindow {
    int color = 0;
    int k_min = 0;
    int k_max = -1;
    std::int64_t gamma_bound = 0;

    bool empty() const { return k_max < k_min || gamma_bound < 0; }
};

struct EdgeSet {
    TreeWindow window;
    std::vector<CubeId> vertices;
    /// (child, parent) index pairs into `vertices`, child level > parent level.
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    bool has_edge(const CubeId& a, const CubeId& b) const;
};

/// Test oracle: the edge relation evaluated by brute force on a window.
/// v (level k) and v' (level k' < k) are joined iff v is contained in v' and
/// no cube of any level strictly between k' and k contains v. Vertices whose
/// parent lies outside the window get no edge.
EdgeSet brute_force_edges(const Params& P, const TreeWindow& window,
                          std::size_t vertex_budget = 20'000);

enum class GraphFormat { Dot, Json };

/// The subtree spanned by `ids` (union of their paths) as DOT or JSON.
std::string export_subtree(const Params& P, const std::vector<CubeId>& ids, GraphFormat format,
                           int scan_cap = kDefaultScanCap);

}  // namespace treebed
