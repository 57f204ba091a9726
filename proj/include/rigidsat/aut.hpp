#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidsat/graph.hpp"

namespace rigidsat::graphs {

/// Permutation of 0..n-1 given by its image list.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& outer, const Perm& inner);  // outer ∘ inner
Perm inverse(const Perm& p);
std::string perm_to_text(const Perm& p);

/// Explicit list of automorphisms, lexicographically sorted by image list.
struct AutSet {
    std::vector<Perm> perms;
    bool truncated = false;  // search stopped at the requested limit

    size_t order() const { return perms.size(); }
    bool contains(const Perm& p) const;

    /// Closure under composition and inverse plus identity membership.
    /// Intended for audits on sets of order <= 5040.
    bool is_group() const;
};

struct AutOptions {
    std::optional<size_t> limit;  // stop early once this many are found
    int max_vertices = 24;        // hard cap, must not exceed 64
};

/// All adjacency-preserving bijections of g, by backtracking over a
/// degree-and-neighborhood partition refinement.
AutSet automorphisms(const Graph& g, const AutOptions& opts = {});

bool is_rigid(const Graph& g, const AutOptions& opts = {});

/// Induced-subgraph embedding: map is injective and preserves both adjacency
/// and non-adjacency. Validated at construction.
struct Embedding {
    Graph source;
    Graph target;
    Perm map;  // size = source vertices, values in target

    Embedding(Graph src, Graph tgt, Perm m);

    static Embedding inclusion(const Graph& source, const Graph& target);
};

/// Lexicographically least β ∈ Aut(target) with β ∘ e = e ∘ alpha, if any.
/// alpha must be an automorphism of e.source.
std::optional<Perm> extension_square(const Embedding& e, const Perm& alpha,
                                     const AutOptions& opts = {});

/// The subgroup of Aut(source) whose elements extend across e.
AutSet ge_group(const Embedding& e, const AutOptions& opts = {});

}  // namespace rigidsat::graphs
