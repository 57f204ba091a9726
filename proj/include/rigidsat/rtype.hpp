#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidsat/metric.hpp"
#include "rigidsat/rational.hpp"

namespace rigidsat::metrics {

/// Space with a distinguished point whose distance floor is the defining
/// property of the pointed class.
struct PointedSpace {
    QMetricSpace space;
    int special = 0;
};

/// True iff every non-special point sits at distance >= r from the special
/// point. The floor constrains distances from the special point only.
bool mr_validate(const PointedSpace& p, const Rat& r);

/// Saturation round restricted to types that keep the special point's
/// distance floor: a candidate is admitted only if its induced distance to
/// the special point is >= r. Requires r > 1 and mr_validate(p, r).
PointedSpace rtype_saturate(const PointedSpace& p, const Rat& r, int k,
                            const std::vector<Rat>& menu);

/// n+2 points: w_1..w_{n+1} pairwise at 2L, plus a hub w at L from each.
struct ObstructionGadget {
    int n = 0;
    Rat scale;            // L
    QMetricSpace space;   // ids 0..n are the w_i, id n+1 is w
    int hub = 0;          // id of w
};

ObstructionGadget make_gadget(int n, const Rat& scale);

/// Exhaustive search for an isometric injection of the gadget that sends its
/// hub to `anchor`. Returns the least witness mapping (gadget id -> host id)
/// or absent.
std::optional<std::vector<int>> gadget_embeds(const QMetricSpace& host, int anchor,
                                              const ObstructionGadget& g);

/// Role of a point inside a layered construction.
struct PointRole {
    enum class Kind { Base, Anchor, Fill };
    Kind kind = Kind::Base;
    int stage = 0;
    int index = 0;  // anchors: the j slot within the stage
    Rat r;          // anchors only
    std::vector<std::pair<int, Rat>> support;  // fills only, min-closed values

    std::string to_text() const;
    static PointRole from_text(const std::string& text);
};

/// Metric space whose points carry construction roles. The skeleton (base
/// plus anchors) is what fill chains must bottom out in.
struct LayeredSpace {
    QMetricSpace space;
    std::vector<PointRole> roles;

    std::vector<int> skeleton_ids() const;
    std::vector<int> fill_ids() const;

    int add_anchor(const KatetovType& t, int stage, int index, const Rat& r);
    int add_fill(const KatetovType& t, int stage);

    std::vector<std::string> role_text() const;
};

/// Iterated-support closure of a fill point: for every reachable skeleton
/// point, the minimal chain sum through fill supports, with the minimizing
/// chain kept for audits. Chains step through strictly earlier fills.
struct SupportClosure {
    int origin = 0;
    std::vector<std::pair<int, Rat>> reach;    // skeleton point -> min chain sum
    std::map<int, std::vector<int>> chains;    // skeleton point -> origin..point chain
};

SupportClosure support_closure(const LayeredSpace& layered, int y);

struct RTypeBound {
    Rat bound;
    bool holds = false;
};

/// bound = d(y, skeleton); holds = (d(y, z) >= bound), evaluated exactly.
/// y must be a fill point and z an anchor.
RTypeBound rtype_lower_bound(const LayeredSpace& layered, int y, int z);

struct SeparatingFamilyResult {
    QMetricSpace space;
    std::vector<int> anchors;
};

/// Adds one anchor per r value, seeded on its pair with exact collinearity
/// d(x, p0) + d(p0, p1) = d(x, p1) and d(x, p0) = r; the rest of the
/// distances come from the push-out through the seed. A degenerate pair
/// (p, p) seeds on the single point. All r must be distinct and > 1.
SeparatingFamilyResult separating_family(const QMetricSpace& base,
                                         const std::vector<Rat>& rs,
                                         const std::vector<std::pair<int, int>>& pairs);

std::string layered_to_text(const LayeredSpace& layered);
LayeredSpace layered_from_text(const std::string& text);

}  // namespace rigidsat::metrics
