#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/rational.hpp"

namespace forge {

// Points are dense indices in insertion order; names are metadata only.
using PointId = std::size_t;

// A finite metric space as an explicit symmetric distance matrix.  The
// constructor only enforces shape; whether the entries actually form a
// metric is the job of validate_metric, so invalid matrices can be loaded
// and reported on.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    static FiniteMetricSpace from_matrix(std::vector<std::string> names,
                                         std::vector<std::vector<Rational>> dist) {
        if (names.size() != dist.size())
            throw parse_error("space/shape", "point list and matrix size differ");
        for (const auto& row : dist)
            if (row.size() != dist.size())
                throw parse_error("space/shape", "distance matrix is not square");
        FiniteMetricSpace m;
        m.names_ = std::move(names);
        m.dist_ = std::move(dist);
        return m;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(PointId p) const { return names_[p]; }
    const Rational& dist(PointId a, PointId b) const { return dist_[a][b]; }
    const std::vector<std::vector<Rational>>& matrix() const { return dist_; }
    const std::vector<std::string>& names() const { return names_; }

    // Appends a point with the given distances to all existing points.
    // Symmetry and a zero diagonal hold by construction.
    PointId add_point(std::string name, const std::vector<Rational>& distances) {
        if (distances.size() != size())
            throw domain_error("space/row-size", "distance row has wrong length");
        PointId id = size();
        for (PointId p = 0; p < id; ++p) dist_[p].push_back(distances[p]);
        auto row = distances;
        row.push_back(Rational(0));
        dist_.push_back(std::move(row));
        names_.push_back(std::move(name));
        return id;
    }

    void rename(std::vector<std::string> names) {
        if (names.size() != size())
            throw domain_error("space/rename", "need one name per point");
        names_ = std::move(names);
    }

    Rational diameter() const {
        Rational d(0);
        for (PointId a = 0; a < size(); ++a)
            for (PointId b = a + 1; b < size(); ++b) d = max(d, dist(a, b));
        return d;
    }

    Rational min_distance() const {
        Rational m(0);
        bool first = true;
        for (PointId a = 0; a < size(); ++a)
            for (PointId b = a + 1; b < size(); ++b) {
                if (first || dist(a, b) < m) m = dist(a, b);
                first = false;
            }
        return m;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Rational>> dist_;
};

struct TriangleViolation {
    PointId i, j, k;   // d(i,k) > d(i,j) + d(j,k)
    Rational lhs, rhs;
};

struct MetricReport {
    bool ok = true;
    std::vector<std::string> structural;        // symmetry / diagonal / positivity faults
    std::vector<TriangleViolation> violations;  // failed triangle triples
};

inline MetricReport validate_metric(const FiniteMetricSpace& m) {
    MetricReport report;
    const std::size_t n = m.size();
    for (PointId i = 0; i < n; ++i) {
        if (!m.dist(i, i).is_zero()) {
            report.structural.push_back("nonzero diagonal at point " + std::to_string(i));
        }
        for (PointId j = i + 1; j < n; ++j) {
            if (m.dist(i, j) != m.dist(j, i))
                report.structural.push_back("asymmetry at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (!m.dist(i, j).is_positive())
                report.structural.push_back("non-positive distance at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
        }
    }
    for (PointId i = 0; i < n; ++i)
        for (PointId j = 0; j < n; ++j) {
            if (j == i) continue;
            for (PointId k = i + 1; k < n; ++k) {
                if (k == j) continue;
                if (m.dist(i, k) > m.dist(i, j) + m.dist(j, k))
                    report.violations.push_back(
                        {i, j, k, m.dist(i, k), m.dist(i, j) + m.dist(j, k)});
            }
        }
    report.ok = report.structural.empty() && report.violations.empty();
    return report;
}

// Exact tuple isometry: d(t1[i],t1[j]) = d(t2[i],t2[j]) for all i,j.
inline bool tuples_isometric(const FiniteMetricSpace& m, std::span<const PointId> t1,
                             std::span<const PointId> t2) {
    if (t1.size() != t2.size())
        throw domain_error("tuples/length", "tuples have different lengths");
    for (std::size_t i = 0; i < t1.size(); ++i)
        for (std::size_t j = i + 1; j < t1.size(); ++j)
            if (m.dist(t1[i], t1[j]) != m.dist(t2[i], t2[j])) return false;
    return true;
}

inline bool tuples_isometric(const FiniteMetricSpace& m, const std::vector<PointId>& t1,
                             const std::vector<PointId>& t2) {
    return tuples_isometric(m, std::span<const PointId>(t1), std::span<const PointId>(t2));
}

}  // namespace forge
