#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/extension.hpp"
#include "forge/metric_space.hpp"
#include "forge/rational.hpp"
#include "forge/rng.hpp"

namespace forge {

// Elements of the level-i elementary abelian 2-group are bit masks over i
// generators; the group operation is XOR and every element is an involution.
using GroupElement = std::uint32_t;

inline std::string bit_name(GroupElement x, std::size_t level) {
    std::string s(level, '0');
    for (std::size_t b = 0; b < level; ++b)
        if (x & (GroupElement(1) << b)) s[b] = '1';
    return s;  // generator j at position j, so names are stable across levels
}

// A translation-invariant metric on the level-i group, stored as the
// distance-to-identity function delta: d(x, y) = delta(x ^ y).
struct InvariantMetric {
    std::size_t level = 0;
    std::vector<Rational> delta;  // indexed by mask; delta[0] unused (= 0)

    std::size_t order() const { return std::size_t(1) << level; }
    const Rational& dist(GroupElement x, GroupElement y) const { return delta[x ^ y]; }

    static InvariantMetric level_one(const Rational& d0) {
        if (!d0.is_positive())
            throw domain_error("group2/positive", "distance must be positive");
        InvariantMetric m;
        m.level = 1;
        m.delta = {Rational(0), d0};
        return m;
    }
};

struct InvariantViolation {
    GroupElement x, y;  // delta(x^y) > delta(x) + delta(y)
};

struct InvariantReport {
    bool ok = true;
    std::vector<GroupElement> non_positive;
    std::vector<InvariantViolation> violations;
};

inline FiniteMetricSpace induced_space(const InvariantMetric& m) {
    const std::size_t n = m.order();
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
    for (std::size_t x = 0; x < n; ++x) {
        names.push_back(bit_name(static_cast<GroupElement>(x), m.level));
        for (std::size_t y = 0; y < n; ++y)
            dist[x][y] = x == y ? Rational(0)
                               : m.delta[static_cast<GroupElement>(x ^ y)];
    }
    return FiniteMetricSpace::from_matrix(std::move(names), std::move(dist));
}

// Checks the delta-form triangle condition, that the induced matrix is a
// metric, and that XOR translation preserves distances; the latter two are
// implied but verified anyway as the checkable form of invariance.
inline InvariantReport validate_invariant(const InvariantMetric& m) {
    InvariantReport report;
    const std::size_t n = m.order();
    if (m.delta.size() != n)
        throw domain_error("group2/shape", "delta table has wrong size");
    for (GroupElement x = 1; x < n; ++x)
        if (!m.delta[x].is_positive()) report.non_positive.push_back(x);
    for (GroupElement x = 1; x < n; ++x)
        for (GroupElement y = x + 1; y < n; ++y)
            if (m.delta[x ^ y] > m.delta[x] + m.delta[y])
                report.violations.push_back({x, y});
    report.ok = report.non_positive.empty() && report.violations.empty();
    if (report.ok) {
        if (!validate_metric(induced_space(m)).ok) report.ok = false;
        for (GroupElement g = 0; g < n && report.ok; ++g)
            for (GroupElement x = 0; x < n && report.ok; ++x)
                for (GroupElement y = 0; y < n; ++y)
                    if (m.dist(g ^ x, g ^ y) != m.dist(x, y)) {
                        report.ok = false;
                        break;
                    }
    }
    return report;
}

// Extends to level i+1 by prescribing the distances from the new generator h
// to every element of the current level; the rest of the new distances come
// from translation: delta(h ^ x) = newDistances(x).  The prescription must
// satisfy |nd(x) - nd(y)| <= d(x,y) <= nd(x) + nd(y).
inline InvariantMetric extend_invariant_metric(const InvariantMetric& m,
                                               const std::vector<Rational>& new_distances) {
    const std::size_t n = m.order();
    if (new_distances.size() != n)
        throw domain_error("group2/shape", "need one distance per current element");
    for (std::size_t x = 0; x < n; ++x)
        if (!new_distances[x].is_positive())
            throw domain_error("group2/positive", "prescribed distance must be positive",
                               {{"element", bit_name(static_cast<GroupElement>(x), m.level)}});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const Rational& d = m.delta[x ^ y];
            if ((new_distances[x] - new_distances[y]).abs() > d ||
                d > new_distances[x] + new_distances[y])
                throw domain_error(
                    "group2/consistency",
                    "prescription violates |nd(x)-nd(y)| <= d(x,y) <= nd(x)+nd(y)",
                    {{"x", bit_name(static_cast<GroupElement>(x), m.level)},
                     {"y", bit_name(static_cast<GroupElement>(y), m.level)}});
        }
    InvariantMetric out;
    out.level = m.level + 1;
    out.delta.resize(2 * n);
    for (std::size_t x = 0; x < n; ++x) out.delta[x] = m.delta[x];
    const GroupElement h = static_cast<GroupElement>(n);  // new top bit
    for (std::size_t x = 0; x < n; ++x)
        out.delta[h ^ static_cast<GroupElement>(x)] = new_distances[x];
    return out;
}

// Extension-property statistics for the sampled metrics: the fraction of
// one- and two-point integer distance prescriptions over the value domain
// that some existing group element realizes exactly.
struct ExtensionStats {
    std::size_t checked = 0;
    std::size_t realized = 0;
    Rational fraction() const {
        return checked == 0 ? Rational(1)
                            : Rational(static_cast<std::int64_t>(realized),
                                       static_cast<std::int64_t>(checked));
    }
};

inline ExtensionStats extension_property_stats(const FiniteMetricSpace& m,
                                               const ValueDomain& domain) {
    ExtensionStats st;
    auto values = domain.candidates(Rational(0), Rational(domain.max_value));
    for (PointId a = 0; a < m.size(); ++a)
        for (const auto& ga : values) {
            ++st.checked;
            for (PointId z = 0; z < m.size(); ++z)
                if (m.dist(z, a) == ga) {
                    ++st.realized;
                    break;
                }
        }
    for (PointId a = 0; a < m.size(); ++a)
        for (PointId b = a + 1; b < m.size(); ++b)
            for (const auto& ga : values)
                for (const auto& gb : values) {
                    if ((ga - gb).abs() > m.dist(a, b) || m.dist(a, b) > ga + gb) continue;
                    ++st.checked;
                    for (PointId z = 0; z < m.size(); ++z)
                        if (m.dist(z, a) == ga && m.dist(z, b) == gb) {
                            ++st.realized;
                            break;
                        }
                }
    return st;
}

// Random invariant metric built by `levels` consistent extensions, each new
// distance sampled uniformly from the domain values inside its feasible
// interval, elements visited in mask order.
inline InvariantMetric generic_invariant_metric(std::size_t levels, const ValueDomain& domain,
                                                std::uint64_t seed) {
    if (levels == 0) throw domain_error("group2/levels", "need at least one level");
    SplitMix64 rng(seed);
    auto pick = [&](const Rational& lo, const Rational& hi) {
        auto choices = domain.candidates(lo, hi);
        if (choices.empty())
            throw domain_error("group2/empty-interval",
                               "no domain value in feasible interval (unreachable)");
        return choices[rng.uniform(choices.size())];
    };
    InvariantMetric m = InvariantMetric::level_one(pick(Rational(0), Rational(domain.max_value)));
    for (std::size_t lvl = 1; lvl < levels; ++lvl) {
        const std::size_t n = m.order();
        std::vector<Rational> nd;
        nd.reserve(n);
        for (std::size_t x = 0; x < n; ++x) {
            Rational lo(0), hi(domain.max_value);
            for (std::size_t y = 0; y < nd.size(); ++y) {
                const Rational& d = m.delta[x ^ y];
                lo = max(lo, (nd[y] - d).abs());
                hi = min(hi, nd[y] + d);
            }
            nd.push_back(pick(lo, hi));
        }
        m = extend_invariant_metric(m, nd);
    }
    return m;
}

// ------------------------------------------------------------------
// The exponent-3 obstruction
// ------------------------------------------------------------------

// Symbolic certificate that no translation-invariant metric on the group
// generated by x, y of order 3 can place d(x,y) and d(-x,y) within eps of
// alpha/2 while d(0,y) sits within eps of 3*alpha/2: the translation
// identities d(0,x-y) = d(y,x) and d(y,x-y) = d(-x,y) expose a triangle
// 0, y, x-y whose defect is at least alpha/2 - 3*eps.
struct Exponent3Report {
    Rational alpha, eps;
    Rational side_long_min;    // least possible d(0,y)
    Rational side_short_max;   // largest possible d(0,x-y) and d(y,x-y)
    Rational violation;        // alpha/2 - 3*eps
    bool contradiction_forced;
    std::vector<std::string> identities;
};

inline Exponent3Report exponent3_witness(const Rational& alpha, const Rational& eps) {
    if (!alpha.is_positive()) throw domain_error("expo3/alpha", "alpha must be positive");
    if (eps.is_negative()) throw domain_error("expo3/eps", "eps must be non-negative");
    Exponent3Report r;
    r.alpha = alpha;
    r.eps = eps;
    Rational half = alpha / Rational(2);
    r.side_long_min = Rational(3) * half - eps;
    r.side_short_max = half + eps;
    r.violation = half - Rational(3) * eps;
    r.contradiction_forced = r.violation.is_positive();
    r.identities = {"d(0,x-y) = d(y,x)  (translate by y)",
                    "d(y,x-y) = d(-x,y)  (translate by -y, then by -x; -2y = y)",
                    "d(0,y) <= d(0,x-y) + d(x-y,y)  fails by at least alpha/2 - 3*eps"};
    return r;
}

}  // namespace forge
