#include "rigidsat/metric_tower.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rigidsat::metrics {

RMatrix::RMatrix(std::vector<std::vector<Rat>> r) : rows(std::move(r)) {
    std::set<Rat> seen;
    for (const auto& row : rows) {
        if (row.empty()) {
            throw std::invalid_argument("empty r-matrix row");
        }
        for (const Rat& value : row) {
            if (value <= 1) {
                throw std::invalid_argument("r-matrix entries must exceed 1");
            }
            if (!seen.insert(value).second) {
                throw std::invalid_argument("r-matrix entries must be pairwise distinct");
            }
        }
    }
}

RMatrix RMatrix::from_text(const std::string& semicolon_rows) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream is(semicolon_rows);
    std::string row;
    while (std::getline(is, row, ';')) {
        if (row.empty()) continue;
        rows.push_back(menu_from_text(row));
    }
    return RMatrix(std::move(rows));
}

std::string RMatrix::to_text() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ';';
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (j) os << ',';
            os << rat_to_string(rows[i][j]);
        }
    }
    return os.str();
}

MetricTower::MetricTower(QMetricSpace base, RMatrix matrix)
    : rmatrix(std::move(matrix)) {
    if (base.point_count() < 1) {
        throw std::invalid_argument("tower base must be nonempty");
    }
    layered.space = std::move(base);
    layered.roles.assign(static_cast<size_t>(layered.space.point_count()), PointRole{});
    stage_sizes.push_back(layered.space.point_count());
}

QMetricSpace MetricTower::snapshot(int stage) const {
    if (stage < 0 || stage >= stage_count()) {
        throw std::invalid_argument("stage index out of range");
    }
    std::vector<int> ids(static_cast<size_t>(stage_sizes[static_cast<size_t>(stage)]));
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return layered.space.restrict_to(ids);
}

QMetricSpace four_point_gadget(const Rat& w0, const Rat& w1, const Rat& pair_dist,
                               const Rat& r) {
    if (!(w0 >= w1 && w1 > r)) {
        throw std::invalid_argument("need d(w,p0) >= d(w,p1) > r, got " + rat_to_string(w0) +
                                    ", " + rat_to_string(w1) + ", r=" + rat_to_string(r));
    }
    if (pair_dist > r) {
        throw std::invalid_argument("pair distance " + rat_to_string(pair_dist) +
                                    " exceeds r=" + rat_to_string(r));
    }
    if (pair_dist <= 0 || r <= 0) {
        throw std::invalid_argument("distances must be positive");
    }
    if (w0 - w1 > pair_dist || pair_dist > w0 + w1) {
        throw std::invalid_argument("(w,p0,p1) is not a triangle: |" + rat_to_string(w0) +
                                    " - " + rat_to_string(w1) + "| <= " +
                                    rat_to_string(pair_dist) + " fails");
    }
    QMetricSpace g(4);
    g.set_dist(0, 1, w0);              // z, q0
    g.set_dist(0, 2, w1);              // z, q1
    g.set_dist(1, 2, pair_dist);       // q0, q1
    g.set_dist(3, 0, r);               // x, z
    g.set_dist(3, 1, w1);              // x, q0
    g.set_dist(3, 2, w1 + pair_dist);  // x, q1
    return g;
}

void build_stage(MetricTower& tower, int stage, const StageOptions& opts) {
    if (stage != tower.stage_count() - 1) {
        throw std::invalid_argument("stages must be built in order; next is " +
                                    std::to_string(tower.stage_count() - 1));
    }
    if (stage >= static_cast<int>(tower.rmatrix.rows.size())) {
        throw std::invalid_argument("no r-matrix row for stage " + std::to_string(stage));
    }
    if (opts.pair_budget < 0 || opts.fill_count < 0) {
        throw std::invalid_argument("budgets must be nonnegative");
    }

    auto& space = tower.layered.space;
    const auto& row = tower.rmatrix.rows[static_cast<size_t>(stage)];
    const int base_size = tower.stage_sizes.front();
    const int dense_size = space.point_count();

    // Enumerate the first pair_budget pairs of the stage's dense part.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < dense_size && static_cast<int>(pairs.size()) < opts.pair_budget; ++i) {
        for (int j = i + 1; j < dense_size && static_cast<int>(pairs.size()) < opts.pair_budget;
             ++j) {
            pairs.emplace_back(i, j);
        }
    }
    if (static_cast<int>(pairs.size()) < opts.pair_budget) {
        throw std::invalid_argument("dense part has fewer pairs than the budget");
    }

    std::vector<bool> used_j(row.size(), false);
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [a, b] = pairs[pi];
        const Rat& pair_dist = space.dist(a, b);

        int slot = -1;
        for (size_t j = 0; j < row.size(); ++j) {
            if (!used_j[j] && pair_dist <= row[j]) {
                slot = static_cast<int>(j);
                break;
            }
        }
        if (slot < 0) {
            throw std::runtime_error("r-matrix row " + std::to_string(stage) +
                                     " exhausted for pair (" + std::to_string(a) + "," +
                                     std::to_string(b) + ") at distance " +
                                     rat_to_string(pair_dist));
        }
        used_j[static_cast<size_t>(slot)] = true;
        const Rat& r = row[static_cast<size_t>(slot)];

        // Base triple (w, p0, p1) with d(w,p0) >= d(w,p1) > r, w in the base.
        int w = -1;
        for (int cand = 0; cand < base_size; ++cand) {
            if (cand == a || cand == b) continue;
            if (space.dist(cand, a) > r && space.dist(cand, b) > r) {
                w = cand;
                break;
            }
        }
        if (w < 0) {
            throw std::runtime_error("no base triple for pair (" + std::to_string(a) + "," +
                                     std::to_string(b) + ") with r=" + rat_to_string(r) +
                                     "; pre-saturate the base");
        }
        const bool keep = space.dist(w, a) >= space.dist(w, b);
        const int q0 = keep ? a : b;
        const int q1 = keep ? b : a;
        const Rat w1 = space.dist(w, q1);

        // Glue the four-point gadget by push-out, identifying z = w and
        // q_l = p_l; the anchor is the one new point, so the gluing is the
        // one-point extension with the gadget's x-distances as the type.
        four_point_gadget(space.dist(w, q0), w1, pair_dist, r);
        KatetovType anchor_type({{w, r}, {q0, w1}, {q1, w1 + pair_dist}});
        const int anchor = tower.layered.add_anchor(anchor_type, stage, slot, r);
        tower.seeds.push_back(AnchorSeed{anchor, w, q0, q1, r});
    }

    // Fill points: first unused canonical types over the enlarged dense part.
    std::set<std::vector<std::pair<int, Rat>>> used_types;
    for (const auto& role : tower.layered.roles) {
        if (role.kind == PointRole::Kind::Fill) used_types.insert(role.support);
    }
    for (int f = 0; f < opts.fill_count; ++f) {
        const auto types = enumerate_types(space, opts.fill_support_bound, opts.fill_menu);
        bool added = false;
        for (const auto& t : types) {
            if (used_types.count(t.support)) continue;
            used_types.insert(t.support);
            tower.layered.add_fill(t, stage);
            added = true;
            break;
        }
        if (!added) {
            throw std::runtime_error("fill menu exhausted at stage " + std::to_string(stage));
        }
    }

    tower.stage_sizes.push_back(space.point_count());
}

std::string MetricAuditReport::to_text() const {
    std::ostringstream os;
    for (const auto& line : lines) os << line << '\n';
    os << "failures " << failures.size() << '\n';
    for (const auto& f : failures) os << f << '\n';
    return os.str();
}

namespace {

// Exhaustive self-isometry search: exact distance-preserving bijections
// that map the first `fixed_prefix` points among themselves.
std::vector<std::vector<int>> self_isometries_fixing(const QMetricSpace& m, int fixed_prefix) {
    const int n = m.point_count();
    std::vector<std::vector<int>> found;
    std::vector<int> image(static_cast<size_t>(n), -1);
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::function<void(int)> run = [&](int v) {
        if (v == n) {
            found.push_back(image);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<size_t>(w)]) continue;
            if (v < fixed_prefix && w >= fixed_prefix) continue;
            if (v >= fixed_prefix && w < fixed_prefix) continue;
            bool ok = true;
            for (int u = 0; u < v; ++u) {
                if (m.dist(u, v) != m.dist(image[static_cast<size_t>(u)], w)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[static_cast<size_t>(v)] = w;
            used[static_cast<size_t>(w)] = true;
            run(v + 1);
            image[static_cast<size_t>(v)] = -1;
            used[static_cast<size_t>(w)] = false;
        }
    };
    run(0);
    return found;
}

}  // namespace

MetricAuditReport audit_stage_rigidity(const MetricTower& tower, int beta) {
    if (beta < 0 || beta >= tower.stage_count()) {
        throw std::invalid_argument("beta stage out of range");
    }
    MetricAuditReport report;
    const auto& space = tower.layered.space;
    const auto& roles = tower.layered.roles;
    const int beta_size = tower.stage_sizes[static_cast<size_t>(beta)];
    const int base_size = tower.stage_sizes.front();

    // Skeleton above beta: the beta snapshot plus every anchor from stage
    // beta onward.
    std::vector<int> skeleton;
    for (int p = 0; p < beta_size; ++p) skeleton.push_back(p);
    std::vector<int> anchors;
    for (size_t p = 0; p < roles.size(); ++p) {
        if (roles[p].kind == PointRole::Kind::Anchor) {
            if (roles[p].stage >= beta && static_cast<int>(p) >= beta_size) {
                skeleton.push_back(static_cast<int>(p));
            }
            anchors.push_back(static_cast<int>(p));
        }
    }

    // (a) fill lower bound against every anchor at or after beta.
    for (size_t y = 0; y < roles.size(); ++y) {
        if (roles[y].kind != PointRole::Kind::Fill || roles[y].stage < beta) continue;
        bool first = true;
        Rat bound;
        for (int s : skeleton) {
            if (s == static_cast<int>(y)) continue;
            const Rat& d = space.dist(static_cast<int>(y), s);
            if (first || d < bound) {
                bound = d;
                first = false;
            }
        }
        for (int z : anchors) {
            if (roles[static_cast<size_t>(z)].stage < beta) continue;
            const Rat& d = space.dist(static_cast<int>(y), z);
            const bool ok = d >= bound;
            std::ostringstream os;
            os << "fill " << y << " anchor " << z << " d=" << rat_to_string(d)
               << " bound=" << rat_to_string(bound) << (ok ? " ok" : " FAIL");
            report.lines.push_back(os.str());
            if (!ok) report.failures.push_back(os.str());
        }
    }

    // (b) anchors attain their r against the base exactly, pairwise distinct.
    for (int z : anchors) {
        bool first = true;
        Rat d0;
        for (int p = 0; p < base_size; ++p) {
            const Rat& d = space.dist(z, p);
            if (first || d < d0) {
                d0 = d;
                first = false;
            }
        }
        const Rat& want = roles[static_cast<size_t>(z)].r;
        const bool ok = !first && d0 == want;
        std::ostringstream os;
        os << "anchor " << z << " d(base)=" << (first ? "-" : rat_to_string(d0))
           << " r=" << rat_to_string(want) << (ok ? " ok" : " FAIL");
        report.lines.push_back(os.str());
        if (!ok) report.failures.push_back(os.str());
    }
    for (size_t i = 0; i < anchors.size(); ++i) {
        for (size_t j = i + 1; j < anchors.size(); ++j) {
            if (roles[static_cast<size_t>(anchors[i])].r ==
                roles[static_cast<size_t>(anchors[j])].r) {
                std::ostringstream os;
                os << "anchors " << anchors[i] << " and " << anchors[j]
                   << " share r=" << rat_to_string(roles[static_cast<size_t>(anchors[i])].r);
                report.lines.push_back(os.str() + " FAIL");
                report.failures.push_back(os.str());
            }
        }
    }

    // (c) brute-force self-isometries fixing X_beta setwise.
    if (space.point_count() <= 14) {
        const auto isoms = self_isometries_fixing(space, beta_size);
        int moved = 0;
        for (const auto& f : isoms) {
            for (int z : anchors) {
                if (f[static_cast<size_t>(z)] != z) {
                    ++moved;
                    std::ostringstream os;
                    os << "isometry moves anchor " << z << " to " << f[static_cast<size_t>(z)];
                    report.failures.push_back(os.str());
                }
            }
        }
        std::ostringstream os;
        os << "isometries fixing stage " << beta << " setwise: " << isoms.size()
           << ", anchor moves: " << moved << (moved == 0 ? " ok" : " FAIL");
        report.lines.push_back(os.str());
    } else {
        report.lines.push_back("isometry search skipped (more than 14 points)");
    }
    return report;
}

std::string metric_tower_to_text(const MetricTower& tower) {
    std::ostringstream os;
    os << "qtower\n";
    os << "rmatrix " << tower.rmatrix.to_text() << '\n';
    os << "stages";
    for (int s : tower.stage_sizes) os << ' ' << s;
    os << '\n';
    os << layered_to_text(tower.layered);
    return os.str();
}

MetricTower metric_tower_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "qtower") {
        throw std::invalid_argument("missing qtower header");
    }
    if (!std::getline(is, line) || line.rfind("rmatrix ", 0) != 0) {
        throw std::invalid_argument("missing rmatrix line");
    }
    RMatrix matrix = RMatrix::from_text(line.substr(8));
    if (!std::getline(is, line) || line.rfind("stages", 0) != 0) {
        throw std::invalid_argument("missing stages line");
    }
    std::istringstream ss(line.substr(6));
    std::vector<int> sizes;
    int v = 0;
    while (ss >> v) sizes.push_back(v);
    if (sizes.empty()) {
        throw std::invalid_argument("empty stages line");
    }

    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    LayeredSpace layered = layered_from_text(rest);

    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1 || sizes[i] > layered.space.point_count() ||
            (i > 0 && sizes[i] < sizes[i - 1])) {
            throw std::invalid_argument("stage sizes must be nondecreasing and in range");
        }
    }
    if (sizes.back() != layered.space.point_count()) {
        throw std::invalid_argument("final stage size must cover the whole space");
    }

    std::vector<int> base_ids(static_cast<size_t>(sizes.front()));
    for (size_t i = 0; i < base_ids.size(); ++i) base_ids[i] = static_cast<int>(i);
    MetricTower tower(layered.space.restrict_to(base_ids), std::move(matrix));
    tower.layered = std::move(layered);
    tower.stage_sizes = std::move(sizes);
    return tower;
}

MetricTower read_metric_tower_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open tower file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return metric_tower_from_text(buf.str());
}

void write_metric_tower_file(const MetricTower& tower, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write tower file: " + path);
    }
    out << metric_tower_to_text(tower);
}

}  // namespace rigidsat::metrics
