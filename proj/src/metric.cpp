#include "rigidsat/metric.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rigidsat::metrics {

QMetricSpace::QMetricSpace(int n) {
    if (n < 0) {
        throw std::invalid_argument("negative point count");
    }
    n_ = n;
    d_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), Rat(0));
}

void QMetricSpace::check_point(int p) const {
    if (p < 0 || p >= n_) {
        throw std::invalid_argument("unknown point id " + std::to_string(p));
    }
}

const Rat& QMetricSpace::dist(int p, int q) const {
    check_point(p);
    check_point(q);
    return d_[static_cast<size_t>(p) * static_cast<size_t>(n_) + static_cast<size_t>(q)];
}

void QMetricSpace::set_dist(int p, int q, const Rat& value) {
    check_point(p);
    check_point(q);
    if (p == q) {
        throw std::invalid_argument("cannot set diagonal distance");
    }
    d_[static_cast<size_t>(p) * static_cast<size_t>(n_) + static_cast<size_t>(q)] = value;
    d_[static_cast<size_t>(q) * static_cast<size_t>(n_) + static_cast<size_t>(p)] = value;
}

int QMetricSpace::add_point(const std::vector<Rat>& dists) {
    if (static_cast<int>(dists.size()) != n_) {
        throw std::invalid_argument("distance vector size mismatch");
    }
    const int id = n_;
    std::vector<Rat> grown(static_cast<size_t>(n_ + 1) * static_cast<size_t>(n_ + 1), Rat(0));
    for (int p = 0; p < n_; ++p) {
        for (int q = 0; q < n_; ++q) {
            grown[static_cast<size_t>(p) * static_cast<size_t>(n_ + 1) + static_cast<size_t>(q)] =
                d_[static_cast<size_t>(p) * static_cast<size_t>(n_) + static_cast<size_t>(q)];
        }
    }
    d_ = std::move(grown);
    ++n_;
    for (int p = 0; p < id; ++p) {
        set_dist(id, p, dists[static_cast<size_t>(p)]);
    }
    return id;
}

QMetricSpace QMetricSpace::restrict_to(const std::vector<int>& points) const {
    QMetricSpace out(static_cast<int>(points.size()));
    for (size_t i = 0; i < points.size(); ++i) {
        check_point(points[i]);
        for (size_t j = i + 1; j < points.size(); ++j) {
            out.set_dist(static_cast<int>(i), static_cast<int>(j), dist(points[i], points[j]));
        }
    }
    return out;
}

bool QMetricSpace::operator==(const QMetricSpace& other) const {
    return n_ == other.n_ && d_ == other.d_;
}

std::string MetricViolation::to_text() const {
    std::ostringstream os;
    if (kind == Kind::NonPositive) {
        os << "nonpositive (" << p << "," << q << "): d=" << rat_to_string(lhs);
    } else {
        os << "triangle (" << p << "," << q << "," << r << "): d(" << p << "," << r
           << ")=" << rat_to_string(lhs) << " > " << rat_to_string(rhs);
    }
    return os.str();
}

std::vector<MetricViolation> validate_metric(const QMetricSpace& m) {
    std::vector<MetricViolation> out;
    const int n = m.point_count();
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (m.dist(p, q) <= 0) {
                out.push_back({MetricViolation::Kind::NonPositive, p, q, 0, m.dist(p, q), Rat(0)});
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            for (int r = p + 1; r < n; ++r) {
                if (r == q) continue;
                // One inequality per unordered {p,r} through q.
                const Rat rhs = m.dist(p, q) + m.dist(q, r);
                if (m.dist(p, r) > rhs) {
                    out.push_back({MetricViolation::Kind::Triangle, p, q, r, m.dist(p, r), rhs});
                }
            }
        }
    }
    return out;
}

KatetovType::KatetovType(std::vector<std::pair<int, Rat>> s) : support(std::move(s)) {
    std::sort(support.begin(), support.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < support.size(); ++i) {
        if (support[i].second <= 0) {
            throw std::invalid_argument("type values must be positive");
        }
        if (i > 0 && support[i].first == support[i - 1].first) {
            throw std::invalid_argument("duplicate support point");
        }
    }
}

bool KatetovType::realizable_over(const QMetricSpace& m) const {
    for (const auto& [y, vy] : support) {
        if (y < 0 || y >= m.point_count()) {
            throw std::invalid_argument("support point outside space");
        }
    }
    for (size_t i = 0; i < support.size(); ++i) {
        for (size_t j = i + 1; j < support.size(); ++j) {
            const auto& [y, vy] = support[i];
            const auto& [z, vz] = support[j];
            const Rat diff = vy >= vz ? vy - vz : vz - vy;
            const Rat& d = m.dist(y, z);
            if (diff > d || d > vy + vz) return false;
        }
    }
    return true;
}

std::vector<Rat> KatetovType::induced_vector(const QMetricSpace& m) const {
    if (support.empty() && m.point_count() > 0) {
        throw std::invalid_argument("empty support over a nonempty space");
    }
    std::vector<Rat> out(static_cast<size_t>(m.point_count()));
    for (int z = 0; z < m.point_count(); ++z) {
        bool first = true;
        Rat best;
        for (const auto& [y, vy] : support) {
            const Rat cand = vy + m.dist(y, z);
            if (first || cand < best) {
                best = cand;
                first = false;
            }
        }
        out[static_cast<size_t>(z)] = best;
    }
    return out;
}

KatetovType KatetovType::closed_over(const QMetricSpace& m) const {
    const auto vec = induced_vector(m);
    std::vector<std::pair<int, Rat>> closed;
    closed.reserve(support.size());
    for (const auto& [y, vy] : support) {
        closed.emplace_back(y, vec[static_cast<size_t>(y)]);
    }
    return KatetovType(std::move(closed));
}

QMetricSpace one_point_extend(const QMetricSpace& m, const KatetovType& t) {
    if (!t.realizable_over(m)) {
        throw std::invalid_argument("type is not realizable over the space");
    }
    QMetricSpace out = m;
    out.add_point(t.induced_vector(m));
    return out;
}

namespace {

void check_embedding(const QMetricSpace& a, const QMetricSpace& b,
                     const MetricEmbedding& e) {
    if (static_cast<int>(e.map.size()) != a.point_count()) {
        throw std::invalid_argument("embedding map size mismatch");
    }
    std::set<int> seen;
    for (int img : e.map) {
        if (img < 0 || img >= b.point_count() || !seen.insert(img).second) {
            throw std::invalid_argument("embedding map is not a point injection");
        }
    }
    for (int p = 0; p < a.point_count(); ++p) {
        for (int q = p + 1; q < a.point_count(); ++q) {
            if (a.dist(p, q) != b.dist(e.map[static_cast<size_t>(p)],
                                       e.map[static_cast<size_t>(q)])) {
                throw std::invalid_argument("embedding is not isometric");
            }
        }
    }
}

}  // namespace

PushoutResult pushout_amalgam(const QMetricSpace& a, const QMetricSpace& b1,
                              const QMetricSpace& b2, const MetricEmbedding& e1,
                              const MetricEmbedding& e2) {
    if (a.point_count() == 0) {
        throw std::invalid_argument("push-out over an empty common part");
    }
    check_embedding(a, b1, e1);
    check_embedding(a, b2, e2);

    PushoutResult out;
    out.from_b1.resize(static_cast<size_t>(b1.point_count()));
    out.from_b2.assign(static_cast<size_t>(b2.point_count()), -1);

    const int n1 = b1.point_count();
    for (int p = 0; p < n1; ++p) out.from_b1[static_cast<size_t>(p)] = p;
    for (int c = 0; c < a.point_count(); ++c) {
        out.from_b2[static_cast<size_t>(e2.map[static_cast<size_t>(c)])] =
            e1.map[static_cast<size_t>(c)];
    }
    std::vector<int> b2_new;
    for (int q = 0; q < b2.point_count(); ++q) {
        if (out.from_b2[static_cast<size_t>(q)] < 0) {
            out.from_b2[static_cast<size_t>(q)] = n1 + static_cast<int>(b2_new.size());
            b2_new.push_back(q);
        }
    }

    QMetricSpace glued(n1 + static_cast<int>(b2_new.size()));
    for (int p = 0; p < n1; ++p) {
        for (int q = p + 1; q < n1; ++q) {
            glued.set_dist(p, q, b1.dist(p, q));
        }
    }
    for (size_t i = 0; i < b2_new.size(); ++i) {
        for (size_t j = i + 1; j < b2_new.size(); ++j) {
            glued.set_dist(n1 + static_cast<int>(i), n1 + static_cast<int>(j),
                           b2.dist(b2_new[i], b2_new[j]));
        }
    }
    for (int p = 0; p < n1; ++p) {
        for (size_t i = 0; i < b2_new.size(); ++i) {
            bool first = true;
            Rat best;
            for (int c = 0; c < a.point_count(); ++c) {
                const Rat cand = b1.dist(p, e1.map[static_cast<size_t>(c)]) +
                                 b2.dist(e2.map[static_cast<size_t>(c)], b2_new[i]);
                if (first || cand < best) {
                    best = cand;
                    first = false;
                }
            }
            glued.set_dist(p, n1 + static_cast<int>(i), best);
        }
    }
    out.space = std::move(glued);
    return out;
}

std::vector<KatetovType> enumerate_types(const QMetricSpace& m, int k,
                                         const std::vector<Rat>& menu) {
    if (k < 1) {
        throw std::invalid_argument("support bound must be at least 1");
    }
    if (menu.empty()) {
        throw std::invalid_argument("empty value menu");
    }
    std::vector<Rat> values = menu;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const Rat& v : values) {
        if (v <= 0) {
            throw std::invalid_argument("menu values must be positive");
        }
    }

    std::vector<KatetovType> out;
    std::set<std::vector<Rat>> seen;
    const int n = m.point_count();
    for (int size = 1; size <= k && size <= n; ++size) {
        std::vector<int> idx(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            // All value assignments over this support, menu-lex order.
            std::vector<size_t> pick(static_cast<size_t>(size), 0);
            while (true) {
                std::vector<std::pair<int, Rat>> support;
                for (int i = 0; i < size; ++i) {
                    support.emplace_back(idx[static_cast<size_t>(i)],
                                         values[pick[static_cast<size_t>(i)]]);
                }
                KatetovType t(std::move(support));
                if (t.realizable_over(m) && seen.insert(t.induced_vector(m)).second) {
                    out.push_back(t.closed_over(m));
                }
                int pos = size - 1;
                while (pos >= 0 && pick[static_cast<size_t>(pos)] == values.size() - 1) {
                    pick[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++pick[static_cast<size_t>(pos)];
            }
            int pos = size - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - size + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < size; ++i) {
                idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
            }
        }
    }
    return out;
}

QMetricSpace qu_saturate(const QMetricSpace& m, int k, const std::vector<Rat>& menu) {
    const auto types = enumerate_types(m, k, menu);
    QMetricSpace out = m;
    for (const auto& t : types) {
        // Supports reference points of the original m only, so distances
        // between fresh points route through the original space.
        out.add_point(t.induced_vector(out));
    }
    return out;
}

std::string to_text(const QMetricSpace& m, const std::vector<std::string>& roles) {
    if (!roles.empty() && static_cast<int>(roles.size()) != m.point_count()) {
        throw std::invalid_argument("role list size mismatch");
    }
    std::ostringstream os;
    os << "qmetric\n";
    os << "points " << m.point_count() << '\n';
    for (int p = 0; p < m.point_count(); ++p) {
        os << p << ' ' << (roles.empty() ? "point" : roles[static_cast<size_t>(p)]) << '\n';
    }
    os << "dist\n";
    for (int p = 0; p < m.point_count(); ++p) {
        for (int q = p + 1; q < m.point_count(); ++q) {
            os << p << ' ' << q << ' ' << rat_to_string(m.dist(p, q)) << '\n';
        }
    }
    os << "end\n";
    return os.str();
}

QMetricSpace metric_from_text(const std::string& text, std::vector<std::string>* roles) {
    std::istringstream is(text);
    std::string token;
    if (!(is >> token) || token != "qmetric") {
        throw std::invalid_argument("missing qmetric header");
    }
    int n = 0;
    if (!(is >> token >> n) || token != "points" || n < 0) {
        throw std::invalid_argument("bad points header");
    }
    is.ignore();
    if (roles) roles->clear();
    for (int i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(is, line)) {
            throw std::invalid_argument("truncated point list");
        }
        std::istringstream ls(line);
        int id = 0;
        if (!(ls >> id) || id != i) {
            throw std::invalid_argument("point ids must be dense and ordered");
        }
        std::string role;
        std::getline(ls, role);
        const auto start = role.find_first_not_of(' ');
        role = start == std::string::npos ? std::string() : role.substr(start);
        if (role.empty()) {
            throw std::invalid_argument("missing point role");
        }
        if (roles) roles->push_back(role);
    }
    std::string line;
    if (!std::getline(is, line) || line != "dist") {
        throw std::invalid_argument("missing dist section");
    }
    QMetricSpace m(n);
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            int i = 0, j = 0;
            std::string frac;
            if (!(is >> i >> j >> frac) || i != p || j != q) {
                throw std::invalid_argument("dist lines must cover the upper triangle in order");
            }
            m.set_dist(p, q, rat_from_string(frac));
        }
    }
    if (!(is >> token) || token != "end") {
        throw std::invalid_argument("missing end marker");
    }
    return m;
}

QMetricSpace read_metric_file(const std::string& path, std::vector<std::string>* roles) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open metric file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return metric_from_text(buf.str(), roles);
}

void write_metric_file(const QMetricSpace& m, const std::string& path,
                       const std::vector<std::string>& roles) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write metric file: " + path);
    }
    out << to_text(m, roles);
}

std::vector<Rat> menu_from_text(const std::string& csv) {
    std::vector<Rat> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(rat_from_string(item));
    }
    return out;
}

}  // namespace rigidsat::metrics
