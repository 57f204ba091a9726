#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rigidsat/rational.hpp"

namespace rigidsat::metrics {

/// Finite metric space with exact rational distances. Points are dense ids
/// 0..n-1; the matrix is stored symmetrically with zero diagonal, so the
/// only representable invariant violations are non-positive off-diagonal
/// entries and broken triangles — validate_metric reports both.
class QMetricSpace {
public:
    QMetricSpace() = default;
    explicit QMetricSpace(int n);

    int point_count() const { return n_; }
    const Rat& dist(int p, int q) const;
    void set_dist(int p, int q, const Rat& value);

    /// Appends a point with the given distances to all existing points.
    int add_point(const std::vector<Rat>& dists);

    /// Restriction to `points`, renumbered in the given order.
    QMetricSpace restrict_to(const std::vector<int>& points) const;

    bool operator==(const QMetricSpace& other) const;

private:
    void check_point(int p) const;

    int n_ = 0;
    std::vector<Rat> d_;  // n*n, symmetric, zero diagonal
};

struct MetricViolation {
    enum class Kind { NonPositive, Triangle };
    Kind kind = Kind::NonPositive;
    int p = 0, q = 0, r = 0;  // r unused for NonPositive
    Rat lhs, rhs;             // offending comparison, exact

    std::string to_text() const;
};

/// Exact audit of positivity and all triangle inequalities. Empty result
/// means the space is a genuine metric space.
std::vector<MetricViolation> validate_metric(const QMetricSpace& m);

/// One-point extension datum: distances to a finite support set. The
/// extension of any other point is the min over the support of
/// value(y) + d(y, z).
struct KatetovType {
    std::vector<std::pair<int, Rat>> support;  // sorted by point id, values > 0

    explicit KatetovType(std::vector<std::pair<int, Rat>> s);

    bool realizable_over(const QMetricSpace& m) const;

    /// Distances from the prospective new point to every point of m.
    std::vector<Rat> induced_vector(const QMetricSpace& m) const;

    /// Same support with values replaced by their min-closure over m.
    KatetovType closed_over(const QMetricSpace& m) const;
};

/// Adjoins the point described by t (id = old point count). The stored type
/// values are min-closed first, so d(new, y) equals the closed value for
/// every support point y.
QMetricSpace one_point_extend(const QMetricSpace& m, const KatetovType& t);

/// Isometric point injection of one space into another, as an index map.
struct MetricEmbedding {
    std::vector<int> map;
};

struct PushoutResult {
    QMetricSpace space;
    std::vector<int> from_b1;  // b1 point -> result point
    std::vector<int> from_b2;  // b2 point -> result point
};

/// Maximal (push-out) amalgamation of b1 and b2 over a: cross distances are
/// the largest values the triangle inequality allows, min over c in a of
/// d(p, e1(c)) + d(e2(c), q). The common part must be nonempty.
PushoutResult pushout_amalgam(const QMetricSpace& a, const QMetricSpace& b1,
                              const QMetricSpace& b2, const MetricEmbedding& e1,
                              const MetricEmbedding& e2);

/// Realizable types with support size <= k and values from the menu, against
/// m, in canonical order (support size, support ids, value tuple), min-closed
/// and deduplicated by induced distance vector.
std::vector<KatetovType> enumerate_types(const QMetricSpace& m, int k,
                                         const std::vector<Rat>& menu);

/// One saturation round: adjoins a fresh point for every enumerate_types
/// entry computed against the original m, in order.
QMetricSpace qu_saturate(const QMetricSpace& m, int k, const std::vector<Rat>& menu);

/// Text format: "qmetric", point roles, then the upper triangle as exact
/// fractions. Role text defaults to "point"; layered modules reuse the same
/// format with richer roles.
std::string to_text(const QMetricSpace& m, const std::vector<std::string>& roles = {});
QMetricSpace metric_from_text(const std::string& text, std::vector<std::string>* roles = nullptr);
QMetricSpace read_metric_file(const std::string& path, std::vector<std::string>* roles = nullptr);
void write_metric_file(const QMetricSpace& m, const std::string& path,
                       const std::vector<std::string>& roles = {});

std::vector<Rat> menu_from_text(const std::string& csv);

}  // namespace rigidsat::metrics
