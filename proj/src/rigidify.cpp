#include "rigidsat/rigidify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rigidsat::graphs {

DegreeSchedule::DegreeSchedule(std::vector<int> t) : terms(std::move(t)) {
    if (terms.empty()) {
        throw std::invalid_argument("degree schedule is empty");
    }
    if (terms.front() < 2) {
        throw std::invalid_argument("degree schedule must start at 2 or above");
    }
    for (size_t i = 1; i < terms.size(); ++i) {
        if (terms[i] <= terms[i - 1]) {
            throw std::invalid_argument("degree schedule must be strictly increasing");
        }
    }
}

DegreeSchedule DegreeSchedule::consecutive(int first, int count) {
    std::vector<int> t(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) t[static_cast<size_t>(i)] = first + i;
    return DegreeSchedule(std::move(t));
}

DegreeSchedule schedule_from_text(const std::string& csv) {
    std::vector<int> terms;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        terms.push_back(std::stoi(item));
    }
    return DegreeSchedule(std::move(terms));
}

namespace {

// Core of the fingerprint: step n (1-based) tops vertex v_n up to degree a_n
// with forward edges, as far as the vertex budget allows.
FingerprintResult fingerprint_impl(const DegreeSchedule& schedule, int m) {
    Graph g(m);
    const int steps = std::min(m, schedule.size());
    for (int n = 1; n <= steps; ++n) {
        const int v = n - 1;
        const int want = schedule.at(n - 1);
        const int have = g.degree(v);
        for (int s = 1; s <= want - have; ++s) {
            const int w = v + s;
            if (w >= m) break;
            g.add_edge(v, w);
        }
    }
    int prefix = 0;
    for (int n = 1; n <= steps; ++n) {
        if (g.degree(n - 1) != schedule.at(n - 1)) break;
        prefix = n;
    }
    return FingerprintResult{std::move(g), prefix};
}

}  // namespace

FingerprintResult build_fingerprint(const DegreeSchedule& schedule, int m) {
    if (m < 2) {
        throw std::invalid_argument("fingerprint needs at least 2 vertices");
    }
    return fingerprint_impl(schedule, m);
}

namespace {

struct AttachResult {
    std::vector<StepRecord> steps;
    std::vector<int> used_witnesses;
    int exact_prefix = 0;
};

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Scans the canonical set-pair enumeration (by support size, then support
// contents, then split code with the W1-heavy split first) for the first
// unused pair that meets the fresh block and whose fresh elements all lie
// strictly before the current step's vertex.
std::optional<SetPair> next_setpair(const std::vector<int>& universe,
                                    const std::vector<int>& fresh_ids, int step_n,
                                    const std::set<SetPair>& used) {
    const int m = static_cast<int>(universe.size());
    std::vector<int> fresh_before(fresh_ids.begin(), fresh_ids.begin() + (step_n - 1));
    for (int size = 1; size <= std::min(m, 3); ++size) {
        std::vector<int> idx(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            bool admissible_support = true;
            bool meets_fresh = false;
            for (int i = 0; i < size && admissible_support; ++i) {
                const int v = universe[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                if (contains(fresh_ids, v)) {
                    meets_fresh = true;
                    if (!contains(fresh_before, v)) admissible_support = false;
                }
            }
            if (admissible_support && meets_fresh) {
                for (unsigned code = 0; code < (1u << size); ++code) {
                    SetPair sp;
                    for (int i = 0; i < size; ++i) {
                        const int v = universe[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                        if (code & (1u << i)) {
                            sp.w2.push_back(v);
                        } else {
                            sp.w1.push_back(v);
                        }
                    }
                    if (!used.count(sp)) return sp;
                }
            }
            int pos = size - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - size + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < size; ++i) {
                idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
            }
        }
    }
    return std::nullopt;
}

// Adds the fingerprint plus the per-step pair and set-pair edges for a block
// of fresh vertices. `base_ids` doubles as the pair universe and the witness
// pool; set-pair supports are drawn from base_ids ∪ fresh_ids.
AttachResult attach_fresh_block(Graph& g, const std::vector<int>& base_ids,
                                const std::vector<int>& fresh_ids,
                                const DegreeSchedule& schedule, int setpair_budget,
                                bool cycle_pairs) {
    const int steps = static_cast<int>(fresh_ids.size());
    const int nbase = static_cast<int>(base_ids.size());
    const long long npairs = static_cast<long long>(nbase) * (nbase - 1);

    AttachResult result;
    auto fp = fingerprint_impl(schedule, steps);
    result.exact_prefix = fp.exact_prefix;
    for (const auto& [u, v] : fp.graph.edges()) {
        g.add_edge(fresh_ids[static_cast<size_t>(u)], fresh_ids[static_cast<size_t>(v)]);
    }

    if (!cycle_pairs && steps > npairs) {
        throw std::invalid_argument("more steps than enumerable ordered base pairs");
    }

    std::vector<int> universe = base_ids;
    universe.insert(universe.end(), fresh_ids.begin(), fresh_ids.end());
    std::sort(universe.begin(), universe.end());

    std::set<SetPair> used_setpairs;
    std::set<int> used_witnesses;
    int budget = setpair_budget;

    for (int n = 1; n <= steps; ++n) {
        StepRecord rec;
        const long long pair_index = cycle_pairs ? (n - 1) % npairs : (n - 1);
        const int first = static_cast<int>(pair_index / (nbase - 1));
        long long rest = pair_index % (nbase - 1);
        int second = static_cast<int>(rest < first ? rest : rest + 1);
        rec.pair = {base_ids[static_cast<size_t>(first)], base_ids[static_cast<size_t>(second)]};

        const int vn = fresh_ids[static_cast<size_t>(n - 1)];
        g.add_edge(vn, rec.pair.first);

        if (budget > 0) {
            auto sp = next_setpair(universe, fresh_ids, n, used_setpairs);
            if (sp) {
                used_setpairs.insert(*sp);
                --budget;

                // The withheld edge {v_i, u_i^2} of any earlier step whose
                // fresh vertex sits in W1 must never appear, so its u_i^2 is
                // barred from witnessing this pair.
                std::set<int> forbidden;
                for (int i = 0; i < n - 1; ++i) {
                    if (contains(sp->w1, fresh_ids[static_cast<size_t>(i)])) {
                        forbidden.insert(result.steps[static_cast<size_t>(i)].pair.second);
                    }
                }

                std::optional<int> witness;
                for (int w : base_ids) {
                    if (used_witnesses.count(w) || forbidden.count(w)) continue;
                    if (contains(sp->w1, w) || contains(sp->w2, w)) continue;
                    bool ok = true;
                    for (int b : sp->w1) {
                        if (!contains(fresh_ids, b) && !g.adjacent(w, b)) {
                            ok = false;
                            break;
                        }
                    }
                    for (int b : sp->w2) {
                        if (ok && g.adjacent(w, b)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        witness = w;
                        break;
                    }
                }
                if (!witness) {
                    throw std::runtime_error("witness exhaustion at step " + std::to_string(n));
                }
                used_witnesses.insert(*witness);
                result.used_witnesses.push_back(*witness);
                for (int b : sp->w1) {
                    if (contains(fresh_ids, b)) {
                        g.add_edge(*witness, b);
                    }
                }
                rec.setpair = std::move(sp);
                rec.witness = witness;
            }
        }
        result.steps.push_back(std::move(rec));
    }
    return result;
}

}  // namespace

RigidifyResult rigidify(const Graph& base, const DegreeSchedule& schedule, int steps) {
    if (base.vertex_count() < 2) {
        throw std::invalid_argument("rigidify needs a base with at least 2 vertices");
    }
    if (steps < 1) {
        throw std::invalid_argument("rigidify needs at least 1 step");
    }

    Graph g = base;
    std::vector<int> base_ids(static_cast<size_t>(base.vertex_count()));
    for (int v = 0; v < base.vertex_count(); ++v) base_ids[static_cast<size_t>(v)] = v;
    std::vector<int> fresh_ids;
    for (int i = 0; i < steps; ++i) fresh_ids.push_back(g.add_vertex());

    auto attach = attach_fresh_block(g, base_ids, fresh_ids, schedule, steps, false);

    RigidifyResult out;
    out.graph = std::move(g);
    out.state.base_vertices = base.vertex_count();
    out.state.v1 = std::move(fresh_ids);
    out.state.steps = std::move(attach.steps);
    out.state.used_witnesses = std::move(attach.used_witnesses);
    out.state.exact_prefix = attach.exact_prefix;
    return out;
}

std::vector<int> GraphTower::layer_vertices(int layer) const {
    std::vector<int> out;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (layer_of[static_cast<size_t>(v)] == layer) out.push_back(v);
    }
    return out;
}

Graph GraphTower::snapshot(int layer) const {
    std::vector<int> keep;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (layer_of[static_cast<size_t>(v)] <= layer) keep.push_back(v);
    }
    return graph.induced(keep);
}

GraphTower build_tower(const Graph& base, const std::vector<DegreeSchedule>& family,
                       int layer_size, int t, const TowerOptions& opts) {
    if (base.vertex_count() < 2) {
        throw std::invalid_argument("tower base needs at least 2 vertices");
    }
    if (t < 0 || t > static_cast<int>(family.size())) {
        throw std::invalid_argument("tower layer count exceeds the schedule family");
    }
    if (t > 0 && layer_size < 1) {
        throw std::invalid_argument("layer size must be positive");
    }
    for (size_t i = 0; i < static_cast<size_t>(t); ++i) {
        for (size_t j = i + 1; j < static_cast<size_t>(t); ++j) {
            if (family[i] == family[j]) {
                throw std::invalid_argument("schedule family entries must be pairwise distinct");
            }
        }
    }

    GraphTower tower;
    tower.graph = base;
    tower.layer_of.assign(static_cast<size_t>(base.vertex_count()), 0);
    tower.layer_start.push_back(0);

    std::vector<int> base_ids(static_cast<size_t>(base.vertex_count()));
    for (int v = 0; v < base.vertex_count(); ++v) base_ids[static_cast<size_t>(v)] = v;

    for (int layer = 1; layer <= t; ++layer) {
        tower.layer_start.push_back(tower.graph.vertex_count());
        std::vector<int> fresh;
        for (int i = 0; i < layer_size; ++i) {
            fresh.push_back(tower.graph.add_vertex());
            tower.layer_of.push_back(layer);
        }
        attach_fresh_block(tower.graph, base_ids, fresh, family[static_cast<size_t>(layer - 1)],
                           opts.setpairs_per_layer, true);
        tower.family.push_back(family[static_cast<size_t>(layer - 1)]);
    }
    return tower;
}

std::string TowerReport::to_text() const {
    std::ostringstream os;
    for (const auto& line : lines) os << line << '\n';
    os << "failures " << failures.size() << '\n';
    for (const auto& f : failures) os << f << '\n';
    return os.str();
}

TowerReport audit_tower(const GraphTower& tower) {
    TowerReport report;
    const int layers = tower.layer_count();
    const auto& layer_of = tower.layer_of;

    // Layer chain: ids grouped by layer in increasing contiguous blocks.
    bool chain_ok = static_cast<int>(layer_of.size()) == tower.graph.vertex_count();
    for (size_t v = 1; v < layer_of.size() && chain_ok; ++v) {
        if (layer_of[v] < layer_of[v - 1]) chain_ok = false;
    }
    for (int l = 0; l < layers && chain_ok; ++l) {
        const auto verts = tower.layer_vertices(l);
        if (verts.empty() ||
            verts.front() != tower.layer_start[static_cast<size_t>(l)]) {
            chain_ok = false;
        }
    }
    report.lines.push_back(chain_ok ? "chain ok" : "chain FAIL");
    if (!chain_ok) report.failures.push_back("layer chain is not a contiguous prefix order");

    // Equal fresh-layer cardinality.
    bool size_ok = true;
    for (int l = 2; l < layers; ++l) {
        if (tower.layer_vertices(l).size() != tower.layer_vertices(1).size()) {
            size_ok = false;
            report.failures.push_back("layer " + std::to_string(l) + " has wrong cardinality");
        }
    }
    report.lines.push_back(size_ok ? "layer-size ok" : "layer-size FAIL");

    // Bounded defects relative to layer 0.
    const auto base_ids = tower.layer_vertices(0);
    const auto defects = defects_over(tower.graph, 1, base_ids);
    report.lines.push_back(defects.empty() ? "defects-k1 ok" : "defects-k1 FAIL");
    for (const auto& d : defects) {
        std::ostringstream os;
        os << "unwitnessed layer-0 query [";
        for (size_t i = 0; i < d.x.size(); ++i) os << (i ? " " : "") << d.x[i];
        os << "] [";
        for (size_t i = 0; i < d.y.size(); ++i) os << (i ? " " : "") << d.y[i];
        os << "]";
        report.failures.push_back(os.str());
    }

    // No edges between distinct positive layers.
    bool ban_ok = true;
    for (const auto& [u, v] : tower.graph.edges()) {
        const int lu = layer_of[static_cast<size_t>(u)];
        const int lv = layer_of[static_cast<size_t>(v)];
        if (lu > 0 && lv > 0 && lu != lv) {
            ban_ok = false;
            report.failures.push_back("cross-layer edge " + std::to_string(u) + "-" +
                                      std::to_string(v));
        }
    }
    report.lines.push_back(ban_ok ? "cross-layer ok" : "cross-layer FAIL");

    // Every ordered layer-0 pair is separated inside every positive layer.
    bool sep_ok = true;
    for (int l = 1; l < layers; ++l) {
        const auto verts = tower.layer_vertices(l);
        for (int v : base_ids) {
            for (int w : base_ids) {
                if (v == w) continue;
                bool found = false;
                for (int u : verts) {
                    if (tower.graph.adjacent(u, v) && !tower.graph.adjacent(u, w)) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    sep_ok = false;
                    report.failures.push_back("pair (" + std::to_string(v) + "," +
                                              std::to_string(w) + ") unseparated in layer " +
                                              std::to_string(l));
                }
            }
        }
    }
    report.lines.push_back(sep_ok ? "separation ok" : "separation FAIL");
    return report;
}

std::string tower_to_text(const GraphTower& tower) {
    std::ostringstream os;
    os << to_text(tower.graph);
    os << "layers\n";
    for (int v = 0; v < tower.graph.vertex_count(); ++v) {
        os << v << ' ' << tower.layer_of[static_cast<size_t>(v)] << '\n';
    }
    return os.str();
}

GraphTower tower_from_text(const std::string& text) {
    const auto marker = text.find("layers\n");
    if (marker == std::string::npos) {
        throw std::invalid_argument("tower text missing layers section");
    }
    GraphTower tower;
    tower.graph = graph_from_text(text.substr(0, marker));
    tower.layer_of.assign(static_cast<size_t>(tower.graph.vertex_count()), -1);
    std::istringstream is(text.substr(marker + 7));
    int v = 0;
    int layer = 0;
    int max_layer = -1;
    while (is >> v >> layer) {
        if (v < 0 || v >= tower.graph.vertex_count() || layer < 0) {
            throw std::invalid_argument("bad layer assignment");
        }
        tower.layer_of[static_cast<size_t>(v)] = layer;
        max_layer = std::max(max_layer, layer);
    }
    for (size_t i = 0; i < tower.layer_of.size(); ++i) {
        if (tower.layer_of[i] < 0) {
            throw std::invalid_argument("vertex missing from layers section");
        }
        if (i > 0 && tower.layer_of[i] < tower.layer_of[i - 1]) {
            throw std::invalid_argument("layers must be contiguous and increasing");
        }
    }
    for (int l = 0; l <= max_layer; ++l) {
        const auto verts = tower.layer_vertices(l);
        if (verts.empty()) {
            throw std::invalid_argument("empty layer in tower text");
        }
        tower.layer_start.push_back(verts.front());
    }
    return tower;
}

}  // namespace rigidsat::graphs
