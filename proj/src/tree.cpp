#include "treebed/tree.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace treebed {

CubeId parent(const Params& P, const CubeId& id, int scan_cap) {
    check_cube_id(P, id);
    if (scan_cap < 1) throw std::invalid_argument("scan_cap must be positive");
    const RationalBox box = realize(P, id);
    const Rational color_shift = id.c * P.nu_coord();
    const Rational offset = P.eta0_coord() - color_shift;

    // Cell coordinate of the center at level j is
    //   p^{j-k} (gamma + 1/2 + c nu - eta0) + eta0 - c nu.
    RationalVec scaled(id.gamma.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled[i] = Rational(mpz_class(static_cast<long>(id.gamma[i]))) + Rational(1, 2) +
                    color_shift - P.eta0_coord();

    CubeId candidate{id.c, id.k, std::vector<std::int64_t>(id.gamma.size())};
    for (int step = 1; step <= scan_cap; ++step) {
        candidate.k = id.k - step;
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            scaled[i] /= P.p();
            candidate.gamma[i] = to_int64(floor_rational(scaled[i] + offset));
        }
        if (realize(P, candidate).contains(box)) return candidate;
    }
    throw ScanExhausted(id.k - scan_cap, "parent of " + to_string(id));
}

AncestorChain ancestor_chain(const Params& P, const CubeId& id, int floor_level, int scan_cap) {
    AncestorChain chain;
    chain.vertices.push_back(id);
    while (chain.vertices.back().k > floor_level)
        chain.vertices.push_back(parent(P, chain.vertices.back(), scan_cap));
    return chain;
}

Meet meet(const Params& P, const CubeId& u, const CubeId& v, int scan_cap) {
    if (u.c != v.c) throw ColorMismatch(u.c, v.c);
    check_cube_id(P, u);
    check_cube_id(P, v);
    Meet m{u, 0, 0};
    CubeId other = v;
    // Both walks climb toward lower levels; the meet is the first vertex they share.
    while (m.vertex != other) {
        if (m.vertex.k > other.k) {
            m.vertex = parent(P, m.vertex, scan_cap);
            ++m.steps_u;
        } else if (other.k > m.vertex.k) {
            other = parent(P, other, scan_cap);
            ++m.steps_v;
        } else {
            m.vertex = parent(P, m.vertex, scan_cap);
            other = parent(P, other, scan_cap);
            ++m.steps_u;
            ++m.steps_v;
        }
    }
    return m;
}

std::int64_t tree_distance(const Params& P, const CubeId& u, const CubeId& v, int scan_cap) {
    const Meet m = meet(P, u, v, scan_cap);
    return static_cast<std::int64_t>(m.steps_u) + m.steps_v;
}

bool EdgeSet::has_edge(const CubeId& a, const CubeId& b) const {
    for (const auto& [child, par] : edges) {
        const CubeId& x = vertices[child];
        const CubeId& y = vertices[par];
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

namespace {

// All gamma in [-bound, bound]^n in lexicographic order.
std::vector<std::vector<std::int64_t>> lattice_block(int n, std::int64_t bound) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> g(static_cast<std::size_t>(n), -bound);
    while (true) {
        out.push_back(g);
        int i = n - 1;
        while (i >= 0 && g[i] == bound) g[i--] = -bound;
        if (i < 0) break;
        ++g[i];
    }
    return out;
}

}  // namespace

EdgeSet brute_force_edges(const Params& P, const TreeWindow& window, std::size_t vertex_budget) {
    EdgeSet result;
    result.window = window;
    if (window.empty()) return result;
    if (window.color < 0 || window.color >= P.colors())
        throw std::invalid_argument("window color out of range");

    const int n = P.n();
    double per_level = 1.0;
    for (int i = 0; i < n; ++i) per_level *= static_cast<double>(2 * window.gamma_bound + 1);
    const double levels = static_cast<double>(window.k_max - window.k_min + 1);
    if (per_level * levels > static_cast<double>(vertex_budget))
        throw ResourceLimit("window has more than " + std::to_string(vertex_budget) + " vertices");

    const auto block = lattice_block(n, window.gamma_bound);
    // Containing cubes of window vertices stay within one lattice step of the
    // block; two steps of slack for the color shift.
    const auto extended = lattice_block(n, window.gamma_bound + 2);

    std::vector<RationalBox> boxes;
    std::map<int, std::vector<RationalBox>> level_cubes;
    for (int k = window.k_min; k <= window.k_max; ++k) {
        for (const auto& g : block) {
            result.vertices.push_back(CubeId{window.color, k, g});
            boxes.push_back(realize(P, result.vertices.back()));
        }
        auto& cubes = level_cubes[k];
        for (const auto& g : extended) cubes.push_back(realize(P, CubeId{window.color, k, g}));
    }

    // Greatest lower level in the window at which some cube contains v.
    const std::size_t count = result.vertices.size();
    std::vector<int> nearest(count, window.k_min - 1);
    for (std::size_t i = 0; i < count; ++i) {
        for (int j = result.vertices[i].k - 1; j >= window.k_min; --j) {
            bool found = false;
            for (const auto& cube : level_cubes[j]) {
                if (cube.contains(boxes[i])) {
                    found = true;
                    break;
                }
            }
            if (found) {
                nearest[i] = j;
                break;
            }
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            const CubeId& v = result.vertices[i];
            const CubeId& w = result.vertices[j];
            if (w.k >= v.k) continue;
            if (w.k != nearest[i]) continue;
            if (boxes[j].contains(boxes[i])) result.edges.emplace_back(i, j);
        }
    }
    return result;
}

namespace {

std::string decimal(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", q.get_d());
    return buf;
}

std::string dot_name(const CubeId& id) {
    std::string s = std::to_string(id.c) + "_" + std::to_string(id.k);
    for (auto g : id.gamma) s += "_" + std::to_string(g);
    return s;
}

std::string joined(const RationalVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + decimal(v[i]);
    return s;
}

}  // namespace

std::string export_subtree(const Params& P, const std::vector<CubeId>& ids, GraphFormat format,
                           int scan_cap) {
    std::map<CubeId, std::size_t> nodes;
    std::set<std::pair<CubeId, CubeId>> edges;
    if (!ids.empty()) {
        for (const auto& id : ids) {
            check_cube_id(P, id);
            if (id.c != ids.front().c) throw ColorMismatch(ids.front().c, id.c);
        }
        CubeId root = ids.front();
        for (const auto& id : ids) root = meet(P, root, id, scan_cap).vertex;
        nodes.emplace(root, 0);
        for (const auto& id : ids) {
            CubeId cur = id;
            while (cur != root) {
                CubeId up = parent(P, cur, scan_cap);
                nodes.emplace(cur, 0);
                edges.emplace(cur, up);
                cur = std::move(up);
            }
        }
    }
    std::size_t next = 0;
    for (auto& [id, index] : nodes) index = next++;

    if (format == GraphFormat::Json) {
        nlohmann::ordered_json doc;
        doc["nodes"] = nlohmann::ordered_json::array();
        for (const auto& [id, index] : nodes) {
            const RationalBox box = realize(P, id);
            nlohmann::ordered_json node;
            node["c"] = id.c;
            node["k"] = id.k;
            node["gamma"] = id.gamma;
            node["lo"] = nlohmann::ordered_json::array();
            node["hi"] = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < box.dim(); ++i) {
                node["lo"].push_back(to_string(box.lo[i]));
                node["hi"].push_back(to_string(box.hi[i]));
            }
            doc["nodes"].push_back(std::move(node));
        }
        doc["edges"] = nlohmann::ordered_json::array();
        for (const auto& [child, up] : edges)
            doc["edges"].push_back({nodes.at(child), nodes.at(up)});
        return doc.dump(2) + "\n";
    }

    std::string out = "graph subtree {\n";
    for (const auto& [id, index] : nodes) {
        const RationalBox box = realize(P, id);
        out += "  \"" + dot_name(id) + "\" [label=\"" + to_string(id) + "\", lo=\"" +
               joined(box.lo) + "\", hi=\"" + joined(box.hi) + "\"];\n";
    }
    for (const auto& [child, up] : edges)
        out += "  \"" + dot_name(child) + "\" -- \"" + dot_name(up) + "\" [weight=1];\n";
    out += "}\n";
    return out;
}

}  // namespace treebed
