#include <doctest.h>

#include "oracles.hpp"

#include <treebed/error.hpp>
#include <treebed/serialize.hpp>
#include <treebed/tree.hpp>

#include <map>
#include <random>
#include <set>

using namespace treebed;

namespace {

CubeId id1(int c, int k, long g) { return {c, k, {g}}; }

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("parent examples against the exhaustive scan") {
    const Params P = validate_params(1, 5);
    CHECK(parent(P, id1(0, 1, 0)) == id1(0, 0, 0));
    CHECK(parent(P, id1(0, 1, 3)) == id1(0, -1, 0));
    CHECK(parent(P, id1(0, 0, 3)) == id1(0, -2, 0));
    for (const CubeId& id : {id1(0, 1, 0), id1(0, 1, 3), id1(0, 0, 3)})
        CHECK(oracle::brute_parent(P, id, 3) == parent(P, id));
}

TEST_CASE("parent agrees with the exhaustive scan on random vertices") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{1, 5}, {1, 7}, {2, 7}}) {
        const Params P = validate_params(n, p);
        std::mt19937_64 rng(n * 13 + p);
        std::uniform_int_distribution<int> c(0, n), k(-3, 4), g(-60, 60);
        for (int i = 0; i < (n == 1 ? 400 : 120); ++i) {
            CubeId id{c(rng), k(rng), {}};
            for (int ax = 0; ax < n; ++ax) id.gamma.push_back(g(rng));
            const auto expect = oracle::brute_parent(P, id, 6);
            REQUIRE_MESSAGE(expect.has_value(), to_string(id));
            CHECK(parent(P, id) == *expect);
        }
    }
}

TEST_CASE("scan cap") {
    const Params P = validate_params(1, 5);
    try {
        parent(P, id1(0, 0, 3), 1);
        FAIL("no exception");
    } catch (const ScanExhausted& e) {
        CHECK(e.k_reached == -1);
    }
    CHECK(parent(P, id1(0, 0, 3), 2) == id1(0, -2, 0));
}

TEST_CASE("ancestor chain examples") {
    const Params P = validate_params(1, 5);
    CHECK(ancestor_chain(P, id1(0, 1, 2), -1).vertices ==
          std::vector<CubeId>{id1(0, 1, 2), id1(0, 0, 0), id1(0, -1, 0)});
    CHECK(ancestor_chain(P, id1(0, 0, 0), 0).vertices == std::vector<CubeId>{id1(0, 0, 0)});
    CHECK(ancestor_chain(P, id1(0, 1, 3), -1).vertices ==
          std::vector<CubeId>{id1(0, 1, 3), id1(0, -1, 0)});
}

TEST_CASE("tree distance examples") {
    const Params P = validate_params(1, 5);
    CHECK(tree_distance(P, id1(0, 1, 2), id1(0, 1, 2)) == 0);
    CHECK(tree_distance(P, id1(0, 1, 2), id1(0, 1, 3)) == 3);
    CHECK(tree_distance(P, id1(0, 1, 0), id1(0, 0, 0)) == 1);
    const Meet m = meet(P, id1(0, 1, 2), id1(0, 1, 3));
    CHECK(m.vertex == id1(0, -1, 0));
    CHECK(m.steps_u == 2);
    CHECK(m.steps_v == 1);
    CHECK_THROWS_AS(tree_distance(P, id1(0, 1, 2), id1(1, 1, 2)), ColorMismatch);
}

TEST_CASE("brute-force edge examples") {
    const Params P = validate_params(1, 5);
    const EdgeSet e = brute_force_edges(P, {0, 0, 1, 5});
    CHECK(e.has_edge(id1(0, 1, 0), id1(0, 0, 0)));
    for (long g = -5; g <= 5; ++g) CHECK_FALSE(e.has_edge(id1(0, 1, 3), id1(0, 0, g)));
    CHECK(brute_force_edges(P, {0, 1, 0, 5}).vertices.empty());
    CHECK(brute_force_edges(P, {0, 1, 0, 5}).edges.empty());

    const EdgeSet w = brute_force_edges(P, {0, -2, 1, 5});
    CHECK(oracle::acyclic(w.vertices.size(), w.edges));
    // |E| = |V| - components
    oracle::UnionFind uf(w.vertices.size());
    for (auto [a, b] : w.edges) uf.unite(a, b);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < w.vertices.size(); ++i) roots.insert(uf.find(i));
    CHECK(w.edges.size() == w.vertices.size() - roots.size());
    CHECK_THROWS_AS(brute_force_edges(P, {0, -8, 8, 1000}), ResourceLimit);
}

TEST_CASE("window edges are exactly parent edges") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{1, 5}, {2, 7}}) {
        const Params P = validate_params(n, p);
        for (int c = 0; c <= n; ++c) {
            const TreeWindow win{c, -2, 1, n == 1 ? 12 : 3};
            const EdgeSet e = brute_force_edges(P, win);
            std::set<std::pair<CubeId, CubeId>> got;
            for (auto [a, b] : e.edges) {
                CHECK(e.vertices[a].k > e.vertices[b].k);
                got.insert({e.vertices[a], e.vertices[b]});
            }
            std::set<std::pair<CubeId, CubeId>> expect;
            std::set<CubeId> in_window(e.vertices.begin(), e.vertices.end());
            for (const CubeId& v : e.vertices) {
                const CubeId up = parent(P, v);
                if (in_window.count(up)) expect.insert({v, up});
            }
            CHECK(got == expect);
        }
    }
}

TEST_CASE("every vertex has a unique parent and levels decrease along chains") {
    const Params P = validate_params(2, 7);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(0, 2), k(-2, 6), g(-400, 400);
    for (int i = 0; i < 300; ++i) {
        const CubeId id{c(rng), k(rng), {g(rng), g(rng)}};
        const auto chain = ancestor_chain(P, id, id.k - 6).vertices;
        for (std::size_t j = 1; j < chain.size(); ++j) {
            CHECK(chain[j].k < chain[j - 1].k);
            CHECK(realize(P, chain[j]).contains(realize(P, chain[j - 1])));
        }
    }
}

TEST_CASE("paths have no interior local maximum of level") {
    const Params P = validate_params(1, 5);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> k(-2, 5), g(-300, 300);
    for (int i = 0; i < 300; ++i) {
        const CubeId u = id1(0, k(rng), g(rng)), v = id1(0, k(rng), g(rng));
        const Meet m = meet(P, u, v);
        std::vector<CubeId> path = ancestor_chain(P, u, m.vertex.k).vertices;
        std::vector<CubeId> back = ancestor_chain(P, v, m.vertex.k).vertices;
        REQUIRE(path.back() == m.vertex);
        REQUIRE(back.back() == m.vertex);
        path.insert(path.end(), back.rbegin() + 1, back.rend());
        CHECK(std::int64_t(path.size()) - 1 == tree_distance(P, u, v));
        for (std::size_t j = 1; j + 1 < path.size(); ++j)
            CHECK_FALSE((path[j].k > path[j - 1].k && path[j].k > path[j + 1].k));
    }
}

TEST_CASE("tree distance equals BFS on the oracle graph") {
    const Params P = validate_params(1, 5);
    const EdgeSet e = brute_force_edges(P, {0, -1, 1, 40});
    REQUIRE(e.vertices.size() >= 200);
    for (std::size_t s = 0; s < e.vertices.size(); s += 7) {
        const std::vector<int> d = oracle::bfs(e.vertices.size(), e.edges, s);
        for (std::size_t t = 0; t < e.vertices.size(); ++t)
            if (d[t] >= 0) CHECK(tree_distance(P, e.vertices[s], e.vertices[t]) == d[t]);
    }
}

TEST_CASE("export subtree") {
    const Params P = validate_params(1, 5);
    const Json one = Json::parse(export_subtree(P, {id1(0, 1, 2)}, GraphFormat::Json));
    CHECK(one["nodes"].size() == 1);
    CHECK(one["edges"].empty());

    const Json two = Json::parse(export_subtree(P, {id1(0, 1, 2), id1(0, 1, 3)}, GraphFormat::Json));
    CHECK(two["nodes"].size() == 4);
    CHECK(two["edges"].size() == 3);
    // rationals are exact strings
    bool found = false;
    for (const Json& node : two["nodes"])
        if (node["k"] == 1 && node["gamma"][0] == 3) {
            CHECK(node["lo"][0] == "21/25");
            CHECK(node["hi"][0] == "24/25");
            found = true;
        }
    CHECK(found);

    const std::string dot = export_subtree(P, {id1(0, 1, 2), id1(0, 1, 3)}, GraphFormat::Dot);
    CHECK(dot.rfind("graph subtree {", 0) == 0);
    std::size_t edges = 0;
    for (std::size_t pos = 0; (pos = dot.find(" -- ", pos)) != std::string::npos; ++pos) ++edges;
    CHECK(edges == 3);
    CHECK(dot.find("\"0_-1_0\"") != std::string::npos);

    CHECK_THROWS_AS(export_subtree(P, {id1(0, 1, 2), id1(1, 1, 3)}, GraphFormat::Dot),
                    ColorMismatch);
    CHECK(Json::parse(export_subtree(P, {}, GraphFormat::Json))["nodes"].empty());
}

}
