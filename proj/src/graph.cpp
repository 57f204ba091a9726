#include "rigidsat/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rigidsat::graphs {

Graph::Graph(int n) {
    if (n < 0) {
        throw std::invalid_argument("negative vertex count");
    }
    n_ = n;
    adj_.assign(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
}

void Graph::check_vertex(int v) const {
    if (!has_vertex(v)) {
        throw std::invalid_argument("unknown vertex id " + std::to_string(v));
    }
}

bool Graph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[static_cast<size_t>(u)][static_cast<size_t>(v)];
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (!adj_[static_cast<size_t>(u)][static_cast<size_t>(v)]) {
        adj_[static_cast<size_t>(u)][static_cast<size_t>(v)] = true;
        adj_[static_cast<size_t>(v)][static_cast<size_t>(u)] = true;
        ++edge_count_;
    }
}

int Graph::add_vertex() {
    for (auto& row : adj_) {
        row.push_back(false);
    }
    ++n_;
    adj_.emplace_back(static_cast<size_t>(n_), false);
    return n_ - 1;
}

int Graph::degree(int v) const {
    check_vertex(v);
    const auto& row = adj_[static_cast<size_t>(v)];
    return static_cast<int>(std::count(row.begin(), row.end(), true));
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (adj_[static_cast<size_t>(v)][static_cast<size_t>(u)]) {
            out.push_back(u);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(edge_count_));
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (adj_[static_cast<size_t>(u)][static_cast<size_t>(v)]) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
    Graph sub(static_cast<int>(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i) {
        check_vertex(vertices[i]);
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            check_vertex(vertices[j]);
            if (adjacent(vertices[i], vertices[j])) {
                sub.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return sub;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw std::invalid_argument("duplicate vertex id in query side");
    }
    return ids;
}

bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return true;
}

}  // namespace

WitnessQuery::WitnessQuery(std::vector<int> x_in, std::vector<int> y_in)
    : x(sorted_unique(std::move(x_in))), y(sorted_unique(std::move(y_in))) {
    if (!disjoint_sorted(x, y)) {
        throw std::invalid_argument("witness query sides overlap");
    }
}

Graph binary_rado(int n) {
    if (n < 0) {
        throw std::invalid_argument("negative vertex count");
    }
    Graph g(n);
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j && i < 63; ++i) {
            if ((static_cast<unsigned long long>(j) >> i) & 1ULL) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

std::optional<int> find_witness(const Graph& g, const WitnessQuery& q) {
    for (int v : q.x) {
        if (!g.has_vertex(v)) {
            throw std::invalid_argument("query vertex outside graph");
        }
    }
    for (int v : q.y) {
        if (!g.has_vertex(v)) {
            throw std::invalid_argument("query vertex outside graph");
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (std::binary_search(q.x.begin(), q.x.end(), v)) continue;
        if (std::binary_search(q.y.begin(), q.y.end(), v)) continue;
        bool ok = true;
        for (int x : q.x) {
            if (!g.adjacent(v, x)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (int y : q.y) {
            if (g.adjacent(v, y)) {
                ok = false;
                break;
            }
        }
        if (ok) return v;
    }
    return std::nullopt;
}

namespace {

// Emits every (X, Y) split of every support set S ⊆ universe with |S| <= k,
// ordered by |S|, then by S itself (lex over sorted contents), then by split
// code where bit i set means S[i] goes to the Y side. Split code 0 (all of S
// in X) comes first, matching the documented defect order.
template <typename Fn>
void for_each_query(const std::vector<int>& universe, int k, Fn&& fn) {
    std::vector<int> sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const int m = static_cast<int>(sorted.size());
    std::vector<int> pick;
    for (int size = 0; size <= k && size <= m; ++size) {
        pick.assign(static_cast<size_t>(size), 0);
        // Enumerate index combinations of `size` elements in lex order.
        std::vector<int> idx(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            for (unsigned code = 0; code < (1u << size); ++code) {
                std::vector<int> xs;
                std::vector<int> ys;
                for (int i = 0; i < size; ++i) {
                    const int v = sorted[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                    if (code & (1u << i)) {
                        ys.push_back(v);
                    } else {
                        xs.push_back(v);
                    }
                }
                fn(WitnessQuery(std::move(xs), std::move(ys)));
            }
            if (size == 0) break;
            int pos = size - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - size + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < size; ++i) {
                idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
            }
        }
    }
}

}  // namespace

std::vector<WitnessQuery> defects_over(const Graph& g, int k,
                                       const std::vector<int>& universe) {
    if (k < 0) {
        throw std::invalid_argument("negative size bound");
    }
    std::vector<WitnessQuery> out;
    for_each_query(universe, k, [&](WitnessQuery q) {
        if (!find_witness(g, q)) {
            out.push_back(std::move(q));
        }
    });
    return out;
}

std::vector<WitnessQuery> extension_defects(const Graph& g, int k) {
    std::vector<int> all(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) all[static_cast<size_t>(v)] = v;
    return defects_over(g, k, all);
}

Graph saturate(const Graph& g, int k) {
    const auto defects = extension_defects(g, k);
    Graph out = g;
    for (const auto& defect : defects) {
        const int fresh = out.add_vertex();
        for (int x : defect.x) {
            out.add_edge(fresh, x);
        }
    }
    return out;
}

int degree_within(const Graph& g, int v, const std::vector<int>& s) {
    if (!g.has_vertex(v)) {
        throw std::invalid_argument("unknown vertex id " + std::to_string(v));
    }
    int count = 0;
    for (int u : s) {
        if (u != v && g.has_vertex(u) && g.adjacent(v, u)) {
            ++count;
        }
    }
    return count;
}

std::string to_text(const Graph& g) {
    std::ostringstream os;
    const auto es = g.edges();
    os << g.vertex_count() << ' ' << es.size() << '\n';
    for (const auto& [u, v] : es) {
        os << u << ' ' << v << '\n';
    }
    return os.str();
}

Graph graph_from_text(const std::string& text) {
    std::istringstream is(text);
    int n = 0;
    int m = 0;
    if (!(is >> n >> m)) {
        throw std::invalid_argument("bad graph header");
    }
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u = 0;
        int v = 0;
        if (!(is >> u >> v)) {
            throw std::invalid_argument("truncated edge list");
        }
        if (u >= v) {
            throw std::invalid_argument("edge endpoints must satisfy u < v");
        }
        g.add_edge(u, v);
    }
    if (g.edge_count() != m) {
        throw std::invalid_argument("duplicate edges in graph text");
    }
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return graph_from_text(buf.str());
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write graph file: " + path);
    }
    out << to_text(g);
}

}  // namespace rigidsat::graphs
