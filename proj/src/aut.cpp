#include "rigidsat/aut.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rigidsat::graphs {

Perm identity_perm(int n) {
    Perm p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

Perm compose(const Perm& outer, const Perm& inner) {
    if (outer.size() != inner.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    Perm out(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) {
        out[i] = outer[static_cast<size_t>(inner[i])];
    }
    return out;
}

Perm inverse(const Perm& p) {
    Perm out(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        out[static_cast<size_t>(p[i])] = static_cast<int>(i);
    }
    return out;
}

std::string perm_to_text(const Perm& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ' ';
        os << p[i];
    }
    return os.str();
}

bool AutSet::contains(const Perm& p) const {
    return std::binary_search(perms.begin(), perms.end(), p);
}

bool AutSet::is_group() const {
    if (perms.empty()) return false;
    const int n = static_cast<int>(perms.front().size());
    if (!contains(identity_perm(n))) return false;
    for (const auto& p : perms) {
        if (!contains(inverse(p))) return false;
        for (const auto& q : perms) {
            if (!contains(compose(p, q))) return false;
        }
    }
    return true;
}

namespace {

// Bitset adjacency rows; the automorphism search is restricted to <= 64
// vertices which is far beyond what exhaustive enumeration can use anyway.
struct BitGraph {
    int n = 0;
    std::vector<uint64_t> rows;

    explicit BitGraph(const Graph& g) : n(g.vertex_count()), rows(static_cast<size_t>(n), 0) {
        for (const auto& [u, v] : g.edges()) {
            rows[static_cast<size_t>(u)] |= 1ULL << v;
            rows[static_cast<size_t>(v)] |= 1ULL << u;
        }
    }

    bool adj(int u, int v) const { return (rows[static_cast<size_t>(u)] >> v) & 1ULL; }
};

// Iterated color refinement: start from degrees, then re-color by the sorted
// multiset of neighbor colors until stable. Vertices may only map to
// vertices of equal final color.
std::vector<int> stable_colors(const BitGraph& g) {
    std::vector<int> color(static_cast<size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
        color[static_cast<size_t>(v)] = static_cast<int>(__builtin_popcountll(g.rows[static_cast<size_t>(v)]));
    }
    for (int round = 0; round < g.n; ++round) {
        std::vector<std::vector<int>> sig(static_cast<size_t>(g.n));
        for (int v = 0; v < g.n; ++v) {
            auto& s = sig[static_cast<size_t>(v)];
            s.push_back(color[static_cast<size_t>(v)]);
            std::vector<int> nb;
            for (int u = 0; u < g.n; ++u) {
                if (g.adj(v, u)) nb.push_back(color[static_cast<size_t>(u)]);
            }
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
        }
        std::map<std::vector<int>, int> codes;
        for (int v = 0; v < g.n; ++v) {
            codes.emplace(sig[static_cast<size_t>(v)], static_cast<int>(codes.size()));
        }
        std::vector<int> next(static_cast<size_t>(g.n));
        for (int v = 0; v < g.n; ++v) {
            next[static_cast<size_t>(v)] = codes[sig[static_cast<size_t>(v)]];
        }
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

struct AutSearch {
    const BitGraph& g;
    std::vector<int> color;
    std::vector<int> image;       // image[v] = assigned target, -1 if free
    std::vector<bool> used;       // target already taken
    std::vector<Perm>* out;
    std::optional<size_t> limit;
    bool stopped = false;

    AutSearch(const BitGraph& graph, std::vector<Perm>* sink, std::optional<size_t> lim)
        : g(graph),
          color(stable_colors(graph)),
          image(static_cast<size_t>(graph.n), -1),
          used(static_cast<size_t>(graph.n), false),
          out(sink),
          limit(lim) {}

    bool consistent(int v, int w) const {
        if (color[static_cast<size_t>(v)] != color[static_cast<size_t>(w)]) return false;
        for (int u = 0; u < g.n; ++u) {
            const int iu = image[static_cast<size_t>(u)];
            if (iu < 0) continue;
            if (g.adj(v, u) != g.adj(w, iu)) return false;
        }
        return true;
    }

    // Assign vertices in id order with ascending candidates, so solutions
    // appear in lexicographic order of their image lists.
    void run(int v) {
        if (stopped) return;
        if (v == g.n) {
            out->emplace_back(image.begin(), image.end());
            if (limit && out->size() >= *limit) stopped = true;
            return;
        }
        if (image[static_cast<size_t>(v)] >= 0) {
            run(v + 1);
            return;
        }
        for (int w = 0; w < g.n && !stopped; ++w) {
            if (used[static_cast<size_t>(w)]) continue;
            if (!consistent(v, w)) continue;
            image[static_cast<size_t>(v)] = w;
            used[static_cast<size_t>(w)] = true;
            run(v + 1);
            image[static_cast<size_t>(v)] = -1;
            used[static_cast<size_t>(w)] = false;
        }
    }
};

void check_cap(const Graph& g, const AutOptions& opts) {
    if (opts.max_vertices > 64) {
        throw std::invalid_argument("vertex cap cannot exceed 64");
    }
    if (g.vertex_count() > opts.max_vertices) {
        throw std::invalid_argument(
            "graph has " + std::to_string(g.vertex_count()) +
            " vertices, above the automorphism search cap of " +
            std::to_string(opts.max_vertices));
    }
}

}  // namespace

AutSet automorphisms(const Graph& g, const AutOptions& opts) {
    check_cap(g, opts);
    AutSet result;
    if (g.vertex_count() == 0) {
        result.perms.push_back({});
        return result;
    }
    BitGraph bg(g);
    AutSearch search(bg, &result.perms, opts.limit);
    search.run(0);
    result.truncated = search.stopped;
    return result;
}

bool is_rigid(const Graph& g, const AutOptions& opts) {
    AutOptions capped = opts;
    capped.limit = 2;
    return automorphisms(g, capped).order() == 1;
}

Embedding::Embedding(Graph src, Graph tgt, Perm m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != source.vertex_count()) {
        throw std::invalid_argument("embedding map size mismatch");
    }
    std::vector<bool> seen(static_cast<size_t>(target.vertex_count()), false);
    for (int v = 0; v < source.vertex_count(); ++v) {
        const int w = map[static_cast<size_t>(v)];
        if (!target.has_vertex(w)) {
            throw std::invalid_argument("embedding image outside target");
        }
        if (seen[static_cast<size_t>(w)]) {
            throw std::invalid_argument("embedding map not injective");
        }
        seen[static_cast<size_t>(w)] = true;
    }
    for (int u = 0; u < source.vertex_count(); ++u) {
        for (int v = u + 1; v < source.vertex_count(); ++v) {
            if (source.adjacent(u, v) !=
                target.adjacent(map[static_cast<size_t>(u)], map[static_cast<size_t>(v)])) {
                throw std::invalid_argument("map does not preserve (non-)adjacency");
            }
        }
    }
}

Embedding Embedding::inclusion(const Graph& source, const Graph& target) {
    if (source.vertex_count() > target.vertex_count()) {
        throw std::invalid_argument("inclusion source larger than target");
    }
    return Embedding(source, target, identity_perm(source.vertex_count()));
}

namespace {

bool is_automorphism(const Graph& g, const Perm& p) {
    if (static_cast<int>(p.size()) != g.vertex_count()) return false;
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (!g.has_vertex(v) || seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = true;
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (g.adjacent(u, v) !=
                g.adjacent(p[static_cast<size_t>(u)], p[static_cast<size_t>(v)])) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::optional<Perm> extension_square(const Embedding& e, const Perm& alpha,
                                     const AutOptions& opts) {
    check_cap(e.target, opts);
    if (!is_automorphism(e.source, alpha)) {
        throw std::invalid_argument("alpha is not an automorphism of the source");
    }
    BitGraph bg(e.target);
    std::vector<Perm> found;
    AutSearch search(bg, &found, 1);
    // β is pinned on the image: β(e(v)) = e(α(v)).
    for (int v = 0; v < e.source.vertex_count(); ++v) {
        const int from = e.map[static_cast<size_t>(v)];
        const int to = e.map[static_cast<size_t>(alpha[static_cast<size_t>(v)])];
        if (!search.consistent(from, to)) {
            return std::nullopt;
        }
        search.image[static_cast<size_t>(from)] = to;
        search.used[static_cast<size_t>(to)] = true;
    }
    search.run(0);
    if (found.empty()) return std::nullopt;
    return found.front();
}

AutSet ge_group(const Embedding& e, const AutOptions& opts) {
    check_cap(e.source, opts);
    check_cap(e.target, opts);
    AutSet source_auts = automorphisms(e.source, opts);
    AutSet result;
    for (const auto& alpha : source_auts.perms) {
        if (extension_square(e, alpha, opts)) {
            result.perms.push_back(alpha);
        }
    }
    result.truncated = source_auts.truncated;
    return result;
}

}  // namespace rigidsat::graphs
