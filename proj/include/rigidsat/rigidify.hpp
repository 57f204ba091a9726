#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidsat/graph.hpp"

namespace rigidsat::graphs {

/// Strictly increasing positive degree targets; the first term must be at
/// least 2 so the internal path edges fit under the degree budget.
struct DegreeSchedule {
    std::vector<int> terms;

    explicit DegreeSchedule(std::vector<int> t);
    static DegreeSchedule consecutive(int first, int count);

    int size() const { return static_cast<int>(terms.size()); }
    int at(int i) const { return terms[static_cast<size_t>(i)]; }

    bool operator==(const DegreeSchedule& other) const { return terms == other.terms; }
};

DegreeSchedule schedule_from_text(const std::string& csv);

struct FingerprintResult {
    Graph graph;       // vertices 0..m-1 stand for v_1..v_m
    int exact_prefix;  // largest p with degree(v_i) == a_i for all i <= p
};

/// Inductive degree-coded graph: step n connects v_n forward until its
/// degree reaches a_n, as far as the vertex budget allows. Boundary vertices
/// whose step would run past m are left with smaller degree.
FingerprintResult build_fingerprint(const DegreeSchedule& schedule, int m);

/// Disjoint ordered pair of vertex sets handled by one construction step.
struct SetPair {
    std::vector<int> w1;
    std::vector<int> w2;

    bool operator==(const SetPair& other) const { return w1 == other.w1 && w2 == other.w2; }
    bool operator<(const SetPair& other) const {
        return std::pair(w1, w2) < std::pair(other.w1, other.w2);
    }
};

/// Everything one step did: the processed ordered base pair, the set pair
/// handled at this position (absent when no admissible one existed yet),
/// and the witness drawn for it.
struct StepRecord {
    std::pair<int, int> pair;
    std::optional<SetPair> setpair;
    std::optional<int> witness;
};

/// Bookkeeping of a rigidifying extension run.
struct RigidifyState {
    int base_vertices = 0;
    std::vector<int> v1;             // fresh vertex ids, in step order
    std::vector<StepRecord> steps;   // 0-based; step n of the proof is steps[n-1]
    std::vector<int> used_witnesses; // in draw order
    int exact_prefix = 0;            // of the internal fingerprint
};

struct RigidifyResult {
    Graph graph;
    RigidifyState state;
};

/// One rigidifying extension round: appends `steps` fresh vertices carrying
/// the schedule's fingerprint, processes the first `steps` ordered base
/// pairs (edge to the first element, withheld edge to the second), and
/// handles one admissible set pair per position with a fresh base witness.
/// Throws on witness exhaustion, naming the failing step.
RigidifyResult rigidify(const Graph& base, const DegreeSchedule& schedule, int steps);

/// Layered graph: layer 0 is the base, each later layer is attached to
/// layer 0 only.
struct GraphTower {
    Graph graph;                        // final stage
    std::vector<int> layer_of;          // per vertex
    std::vector<int> layer_start;       // first vertex id of each layer
    std::vector<DegreeSchedule> family; // schedules used, one per positive layer

    int layer_count() const { return static_cast<int>(layer_start.size()); }
    std::vector<int> layer_vertices(int layer) const;
    Graph snapshot(int layer) const;  // induced prefix up to this layer
};

struct TowerOptions {
    int setpairs_per_layer = 0;  // witness-backed set pairs handled per layer
};

/// Builds layers R_1..R_t over the base. Each layer carries its own
/// fingerprint, separator edges for every ordered base pair (cycled in lex
/// order), and optionally witness-backed set pairs against layer 0.
GraphTower build_tower(const Graph& base, const std::vector<DegreeSchedule>& family,
                       int layer_size, int t, const TowerOptions& opts = {});

struct TowerReport {
    std::vector<std::string> lines;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    std::string to_text() const;
};

/// Audits the five layered-construction conditions directly on the value:
/// snapshot chain, layer cardinality, bounded defects relative to layer 0,
/// the cross-layer edge ban, and layer-0 pair separation per layer.
TowerReport audit_tower(const GraphTower& tower);

std::string tower_to_text(const GraphTower& tower);
GraphTower tower_from_text(const std::string& text);

}  // namespace rigidsat::graphs
