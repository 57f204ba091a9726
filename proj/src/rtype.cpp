#include "rigidsat/rtype.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rigidsat::metrics {

bool mr_validate(const PointedSpace& p, const Rat& r) {
    if (p.space.point_count() > 0 &&
        (p.special < 0 || p.special >= p.space.point_count())) {
        throw std::invalid_argument("special point outside space");
    }
    for (int q = 0; q < p.space.point_count(); ++q) {
        if (q == p.special) continue;
        if (p.space.dist(p.special, q) < r) return false;
    }
    return true;
}

PointedSpace rtype_saturate(const PointedSpace& p, const Rat& r, int k,
                            const std::vector<Rat>& menu) {
    if (r <= 1) {
        throw std::invalid_argument("r must exceed 1");
    }
    if (!mr_validate(p, r)) {
        throw std::invalid_argument("space violates the distance floor for this r");
    }
    const auto types = enumerate_types(p.space, k, menu);
    PointedSpace out{p.space, p.special};
    for (const auto& t : types) {
        const auto vec = t.induced_vector(p.space);
        if (vec[static_cast<size_t>(p.special)] < r) continue;
        out.space.add_point(t.induced_vector(out.space));
    }
    return out;
}

ObstructionGadget make_gadget(int n, const Rat& scale) {
    if (n < 1) {
        throw std::invalid_argument("gadget needs a support size of at least 1");
    }
    if (scale <= 0) {
        throw std::invalid_argument("gadget scale must be positive");
    }
    ObstructionGadget g;
    g.n = n;
    g.scale = scale;
    g.hub = n + 1;
    g.space = QMetricSpace(n + 2);
    const Rat two_l = scale * 2;
    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            g.space.set_dist(i, j, two_l);
        }
        g.space.set_dist(g.hub, i, scale);
    }
    return g;
}

std::optional<std::vector<int>> gadget_embeds(const QMetricSpace& host, int anchor,
                                              const ObstructionGadget& g) {
    if (anchor < 0 || anchor >= host.point_count()) {
        throw std::invalid_argument("anchor outside host");
    }
    // Spokes are interchangeable, so the search space is just the host
    // points at exactly L from the anchor, filtered to a pairwise-2L clique.
    std::vector<int> candidates;
    for (int p = 0; p < host.point_count(); ++p) {
        if (p != anchor && host.dist(anchor, p) == g.scale) {
            candidates.push_back(p);
        }
    }
    const int need = g.n + 1;
    std::vector<int> chosen;
    const Rat two_l = g.scale * 2;
    std::function<bool(size_t)> search = [&](size_t from) {
        if (static_cast<int>(chosen.size()) == need) return true;
        for (size_t i = from; i < candidates.size(); ++i) {
            bool ok = true;
            for (int c : chosen) {
                if (host.dist(c, candidates[i]) != two_l) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(candidates[i]);
            if (search(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    std::vector<int> mapping(static_cast<size_t>(g.n + 2));
    for (int i = 0; i <= g.n; ++i) mapping[static_cast<size_t>(i)] = chosen[static_cast<size_t>(i)];
    mapping[static_cast<size_t>(g.hub)] = anchor;
    return mapping;
}

std::string PointRole::to_text() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Base:
            os << "base";
            break;
        case Kind::Anchor:
            os << "anchor " << stage << ' ' << index << ' ' << rat_to_string(r);
            break;
        case Kind::Fill: {
            os << "fill " << stage << ' ';
            for (size_t i = 0; i < support.size(); ++i) {
                if (i) os << ',';
                os << support[i].first << ':' << rat_to_string(support[i].second);
            }
            break;
        }
    }
    return os.str();
}

PointRole PointRole::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    is >> kind;
    PointRole role;
    if (kind == "base" || kind == "point") {
        role.kind = Kind::Base;
        return role;
    }
    if (kind == "anchor") {
        role.kind = Kind::Anchor;
        std::string frac;
        if (!(is >> role.stage >> role.index >> frac)) {
            throw std::invalid_argument("bad anchor role: " + text);
        }
        role.r = rat_from_string(frac);
        return role;
    }
    if (kind == "fill") {
        role.kind = Kind::Fill;
        std::string supp;
        if (!(is >> role.stage >> supp)) {
            throw std::invalid_argument("bad fill role: " + text);
        }
        std::istringstream ss(supp);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                throw std::invalid_argument("bad fill support: " + text);
            }
            role.support.emplace_back(std::stoi(item.substr(0, colon)),
                                      rat_from_string(item.substr(colon + 1)));
        }
        if (role.support.empty()) {
            throw std::invalid_argument("fill role without support: " + text);
        }
        return role;
    }
    throw std::invalid_argument("unknown role: " + text);
}

std::vector<int> LayeredSpace::skeleton_ids() const {
    std::vector<int> out;
    for (size_t i = 0; i < roles.size(); ++i) {
        if (roles[i].kind != PointRole::Kind::Fill) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> LayeredSpace::fill_ids() const {
    std::vector<int> out;
    for (size_t i = 0; i < roles.size(); ++i) {
        if (roles[i].kind == PointRole::Kind::Fill) out.push_back(static_cast<int>(i));
    }
    return out;
}

int LayeredSpace::add_anchor(const KatetovType& t, int stage, int index, const Rat& r) {
    if (!t.realizable_over(space)) {
        throw std::invalid_argument("anchor type is not realizable");
    }
    const int id = space.add_point(t.induced_vector(space));
    PointRole role;
    role.kind = PointRole::Kind::Anchor;
    role.stage = stage;
    role.index = index;
    role.r = r;
    roles.push_back(std::move(role));
    return id;
}

int LayeredSpace::add_fill(const KatetovType& t, int stage) {
    if (!t.realizable_over(space)) {
        throw std::invalid_argument("fill type is not realizable");
    }
    const KatetovType closed = t.closed_over(space);
    const int id = space.add_point(closed.induced_vector(space));
    PointRole role;
    role.kind = PointRole::Kind::Fill;
    role.stage = stage;
    role.support = closed.support;
    roles.push_back(std::move(role));
    return id;
}

std::vector<std::string> LayeredSpace::role_text() const {
    std::vector<std::string> out;
    out.reserve(roles.size());
    for (const auto& role : roles) out.push_back(role.to_text());
    return out;
}

SupportClosure support_closure(const LayeredSpace& layered, int y) {
    if (y < 0 || y >= layered.space.point_count() ||
        layered.roles[static_cast<size_t>(y)].kind != PointRole::Kind::Fill) {
        throw std::invalid_argument("support closure origin must be a fill point");
    }

    SupportClosure out;
    out.origin = y;
    std::map<int, Rat> best;

    // Supports reference strictly earlier points, so walking them is a DAG
    // traversal; chains carry the minimizing path for the audit.
    std::function<void(int, const Rat&, std::vector<int>&)> walk =
        [&](int point, const Rat& sum, std::vector<int>& chain) {
            chain.push_back(point);
            if (layered.roles[static_cast<size_t>(point)].kind != PointRole::Kind::Fill) {
                auto it = best.find(point);
                if (it == best.end() || sum < it->second) {
                    best[point] = sum;
                    out.chains[point] = chain;
                }
            } else {
                for (const auto& [s, v] : layered.roles[static_cast<size_t>(point)].support) {
                    walk(s, sum + v, chain);
                }
            }
            chain.pop_back();
        };

    std::vector<int> chain;
    chain.push_back(y);
    for (const auto& [s, v] : layered.roles[static_cast<size_t>(y)].support) {
        walk(s, v, chain);
    }
    out.reach.assign(best.begin(), best.end());
    return out;
}

RTypeBound rtype_lower_bound(const LayeredSpace& layered, int y, int z) {
    if (y < 0 || y >= layered.space.point_count() ||
        layered.roles[static_cast<size_t>(y)].kind != PointRole::Kind::Fill) {
        throw std::invalid_argument("y must be a fill point");
    }
    if (z < 0 || z >= layered.space.point_count() ||
        layered.roles[static_cast<size_t>(z)].kind != PointRole::Kind::Anchor) {
        throw std::invalid_argument("z must be an anchor");
    }
    RTypeBound out;
    bool first = true;
    for (int s : layered.skeleton_ids()) {
        const Rat& d = layered.space.dist(y, s);
        if (first || d < out.bound) {
            out.bound = d;
            first = false;
        }
    }
    out.holds = layered.space.dist(y, z) >= out.bound;
    return out;
}

SeparatingFamilyResult separating_family(const QMetricSpace& base,
                                         const std::vector<Rat>& rs,
                                         const std::vector<std::pair<int, int>>& pairs) {
    if (rs.size() != pairs.size()) {
        throw std::invalid_argument("need one pair per r value");
    }
    for (size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] <= 1) {
            throw std::invalid_argument("r values must exceed 1");
        }
        for (size_t j = i + 1; j < rs.size(); ++j) {
            if (rs[i] == rs[j]) {
                throw std::invalid_argument("r values must be pairwise distinct");
            }
        }
    }

    SeparatingFamilyResult out;
    out.space = base;
    for (size_t i = 0; i < rs.size(); ++i) {
        const auto [p0, p1] = pairs[i];
        if (p0 < 0 || p0 >= base.point_count() || p1 < 0 || p1 >= base.point_count()) {
            throw std::invalid_argument("pair point outside the base");
        }
        std::vector<std::pair<int, Rat>> support;
        support.emplace_back(p0, rs[i]);
        if (p1 != p0) {
            support.emplace_back(p1, rs[i] + base.dist(p0, p1));
        }
        KatetovType seed(std::move(support));
        if (!seed.realizable_over(out.space)) {
            std::ostringstream os;
            os << "seed for anchor " << i << " fails the triangle audit on (" << p0 << ","
               << p1 << ")";
            throw std::invalid_argument(os.str());
        }
        out.anchors.push_back(out.space.add_point(seed.induced_vector(out.space)));
    }
    return out;
}

std::string layered_to_text(const LayeredSpace& layered) {
    return to_text(layered.space, layered.role_text());
}

LayeredSpace layered_from_text(const std::string& text) {
    LayeredSpace out;
    std::vector<std::string> role_lines;
    out.space = metric_from_text(text, &role_lines);
    for (const auto& line : role_lines) {
        out.roles.push_back(PointRole::from_text(line));
    }
    for (size_t i = 0; i < out.roles.size(); ++i) {
        for (const auto& [s, v] : out.roles[i].support) {
            if (s < 0 || s >= static_cast<int>(i)) {
                throw std::invalid_argument("fill support must reference earlier points");
            }
        }
    }
    return out;
}

}  // namespace rigidsat::metrics
