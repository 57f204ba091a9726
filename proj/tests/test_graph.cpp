#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>

#include "rigidsat/graph.hpp"

using namespace rigidsat::graphs;

namespace {

// Independent witness oracle: plain scan with no shortcuts, kept separate
// from the library path it checks.
std::optional<int> oracle_witness(const Graph& g, const std::vector<int>& xs,
                                  const std::vector<int>& ys) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (std::count(xs.begin(), xs.end(), v) || std::count(ys.begin(), ys.end(), v)) {
            continue;
        }
        bool ok = true;
        for (int x : xs) ok = ok && g.adjacent(v, x);
        for (int y : ys) ok = ok && !g.adjacent(v, y);
        if (ok) return v;
    }
    return std::nullopt;
}

Graph random_graph(std::mt19937& rng, int n) {
    Graph g(n);
    std::bernoulli_distribution coin(0.4);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("binary_rado basics") {
    CHECK(binary_rado(1).vertex_count() == 1);
    CHECK(binary_rado(1).edge_count() == 0);
    CHECK(binary_rado(0).vertex_count() == 0);

    const Graph g4 = binary_rado(4);
    const std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(g4.edges() == expected);

    const Graph g8 = binary_rado(8);
    CHECK(g8.adjacent(0, 5));
    CHECK_FALSE(g8.adjacent(1, 5));
}

TEST_CASE("binary_rado induced-prefix property") {
    const Graph big = binary_rado(16);
    for (int n : {1, 3, 7, 12}) {
        const Graph small = binary_rado(n);
        std::vector<int> prefix(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) prefix[static_cast<size_t>(i)] = i;
        CHECK(big.induced(prefix) == small);
    }
}

TEST_CASE("find_witness worked examples") {
    const Graph g8 = binary_rado(8);
    CHECK(find_witness(g8, WitnessQuery({0}, {1})) == 5);

    const Graph g2 = binary_rado(2);
    CHECK_FALSE(find_witness(g2, WitnessQuery({0}, {1})).has_value());

    CHECK(find_witness(g8, WitnessQuery({}, {})) == 0);
    CHECK_THROWS_AS(WitnessQuery({0, 1}, {1}), std::invalid_argument);
}

TEST_CASE("find_witness agrees with the oracle on random graphs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const Graph g = random_graph(rng, n);
        std::vector<int> pool(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        const int xs = static_cast<int>(rng() % 3);
        const int ys = static_cast<int>(rng() % 3);
        if (xs + ys > n) continue;
        std::vector<int> x(pool.begin(), pool.begin() + xs);
        std::vector<int> y(pool.begin() + xs, pool.begin() + xs + ys);
        CHECK(find_witness(g, WitnessQuery(x, y)) == oracle_witness(g, x, y));
    }
}

TEST_CASE("extension_defects order and trivial cases") {
    const Graph g1 = binary_rado(1);
    const auto defects = extension_defects(g1, 1);
    REQUIRE(defects.size() == 2);
    CHECK(defects[0] == WitnessQuery({0}, {}));
    CHECK(defects[1] == WitnessQuery({}, {0}));

    CHECK(extension_defects(binary_rado(5), 0).empty());
}

TEST_CASE("saturate worked examples") {
    const Graph single(1);
    const Graph sat = saturate(single, 1);
    REQUIRE(sat.vertex_count() == 3);
    CHECK(sat.adjacent(0, 1));       // witness for ({0}, {})
    CHECK_FALSE(sat.adjacent(0, 2)); // witness for ({}, {0})
    CHECK_FALSE(sat.adjacent(1, 2));

    const Graph g = binary_rado(6);
    CHECK(saturate(g, 0) == g);
}

TEST_CASE("saturate closes all defects over the original vertices") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Graph g = random_graph(rng, n);
        for (int k : {1, 2}) {
            const Graph sat = saturate(g, k);
            std::vector<int> original(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) original[static_cast<size_t>(i)] = i;
            CHECK(defects_over(sat, k, original).empty());
            // Determinism: same inputs, same output.
            CHECK(saturate(g, k) == sat);
            // Original edges unchanged.
            CHECK(sat.induced(original) == g);
        }
    }
}

TEST_CASE("degree_within") {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(degree_within(path, 1, {0, 2}) == 2);
    CHECK(degree_within(path, 1, {}) == 0);
    CHECK(degree_within(binary_rado(4), 1, {0, 2, 3}) == 3);
    CHECK_THROWS_AS(degree_within(path, 9, {0}), std::invalid_argument);
}

TEST_CASE("graph text format round trip") {
    const Graph g = binary_rado(6);
    const std::string text = to_text(g);
    CHECK(text.substr(0, text.find('\n')) == "6 7");
    CHECK(graph_from_text(text) == g);
    CHECK_THROWS_AS(graph_from_text("2 1\n1 0\n"), std::invalid_argument);
}
