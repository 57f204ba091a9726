#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rigidsat::graphs {

/// Finite simple graph on vertex ids 0..n-1. Edges are unordered pairs,
/// stored symmetrically; self-loops are rejected at insertion. Instances
/// are plain values: every operation in this library takes graphs by const
/// reference and returns new ones.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    bool adjacent(int u, int v) const;
    void add_edge(int u, int v);
    bool has_vertex(int v) const { return v >= 0 && v < n_; }

    /// Appends an isolated vertex, returns its id.
    int add_vertex();

    int degree(int v) const;
    std::vector<int> neighbors(int v) const;

    /// Sorted list of edges {u,v} with u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

    /// Induced subgraph on `vertices` (kept in the given order; ids are
    /// renumbered 0..k-1 accordingly).
    Graph induced(const std::vector<int>& vertices) const;

    bool operator==(const Graph& other) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<bool>> adj_;
};

/// Disjoint query (X, Y): looked-for vertex must be adjacent to all of X and
/// to none of Y.
struct WitnessQuery {
    std::vector<int> x;  // sorted, duplicate-free
    std::vector<int> y;  // sorted, duplicate-free

    WitnessQuery() = default;
    WitnessQuery(std::vector<int> x_in, std::vector<int> y_in);

    bool operator==(const WitnessQuery& other) const {
        return x == other.x && y == other.y;
    }
};

/// Deterministic finite approximation of the countable saturated graph:
/// for i < j, edge {i,j} iff bit i of j is set.
Graph binary_rado(int n);

/// Least vertex outside X ∪ Y adjacent to every x ∈ X and no y ∈ Y, if any.
std::optional<int> find_witness(const Graph& g, const WitnessQuery& q);

/// All witnessless disjoint queries (X, Y) with |X|+|Y| <= k whose supports
/// are drawn from `universe`, in canonical order: by |X|+|Y|, then by the
/// sorted support set, then X-heavy splits first.
std::vector<WitnessQuery> defects_over(const Graph& g, int k,
                                       const std::vector<int>& universe);

/// defects_over with universe = all vertices of g.
std::vector<WitnessQuery> extension_defects(const Graph& g, int k);

/// One saturation round: for each defect of g at bound k (computed against
/// the input graph only), appends a fresh vertex adjacent to exactly the
/// defect's X side. Fresh vertices are mutually non-adjacent.
Graph saturate(const Graph& g, int k);

/// Number of neighbors of v inside S.
int degree_within(const Graph& g, int v, const std::vector<int>& s);

/// Text format: first line "n m", then m lines "u v" with u < v, sorted.
std::string to_text(const Graph& g);
Graph graph_from_text(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace rigidsat::graphs
