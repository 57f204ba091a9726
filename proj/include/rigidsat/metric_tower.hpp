#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rigidsat/metric.hpp"
#include "rigidsat/rational.hpp"
#include "rigidsat/rtype.hpp"

namespace rigidsat::metrics {

/// Per-stage r values: pairwise distinct across the whole matrix, each > 1.
/// A row must top out above every pair distance its stage enumerates; that
/// finite surrogate for unbounded growth is checked while building.
struct RMatrix {
    std::vector<std::vector<Rat>> rows;

    explicit RMatrix(std::vector<std::vector<Rat>> r);

    static RMatrix from_text(const std::string& semicolon_rows);
    std::string to_text() const;
};

/// Gluing record of one anchor: the base point z at exact distance r and the
/// processed pair (q0, q1) with the collinear far side.
struct AnchorSeed {
    int anchor = 0;
    int z = 0;
    int q0 = 0;
    int q1 = 0;
    Rat r;
};

/// Staged metric tower: alternating anchor and fill layers over a base.
struct MetricTower {
    LayeredSpace layered;
    RMatrix rmatrix;
    std::vector<int> stage_sizes;  // point count after each snapshot, X_0 first
    std::vector<AnchorSeed> seeds;

    explicit MetricTower(QMetricSpace base, RMatrix matrix);

    int stage_count() const { return static_cast<int>(stage_sizes.size()); }
    QMetricSpace snapshot(int stage) const;
};

/// The four-point space {z, q0, q1, x} with d(z,q0)=w0, d(z,q1)=w1,
/// d(q0,q1)=pair_dist, d(x,z)=r, d(x,q0)=w1 and d(x,q1)=w1+pair_dist.
/// Preconditions: w0 >= w1 > r, pair_dist <= r, and (w0, w1, pair_dist)
/// forms a triangle. Point order: z, q0, q1, x.
QMetricSpace four_point_gadget(const Rat& w0, const Rat& w1, const Rat& pair_dist,
                               const Rat& r);

struct StageOptions {
    int pair_budget = 0;
    int fill_count = 0;
    std::vector<Rat> fill_menu;
    int fill_support_bound = 1;
};

/// Builds stage `stage` (which must be the next unbuilt one): enumerates the
/// first pair_budget point pairs, assigns each the least unused admissible
/// matrix slot, glues a four-point gadget anchor for it through a base
/// triple, then adds fill_count finitely supported fill points.
void build_stage(MetricTower& tower, int stage, const StageOptions& opts);

struct MetricAuditReport {
    std::vector<std::string> lines;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    std::string to_text() const;
};

/// Exhaustive exact audits against stage beta: (a) every fill at or after
/// beta keeps every anchor at or beyond its skeleton distance, (b) every
/// anchor attains its r value against the base exactly and the values are
/// pairwise distinct, (c) for hosts of at most 14 points, every self
/// isometry fixing X_beta setwise fixes every anchor.
MetricAuditReport audit_stage_rigidity(const MetricTower& tower, int beta);

std::string metric_tower_to_text(const MetricTower& tower);
MetricTower metric_tower_from_text(const std::string& text);
MetricTower read_metric_tower_file(const std::string& path);
void write_metric_tower_file(const MetricTower& tower, const std::string& path);

}  // namespace rigidsat::metrics
